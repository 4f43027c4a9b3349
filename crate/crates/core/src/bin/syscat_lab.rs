//! `syscat-lab`: command-line front end for the systolic-geometry and
//! category-bounds engines.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use syscat_core::cdga::{models, parse_cdga, Cohomology, FreeCdga};
use syscat_core::experiment::{
    emit_report, run_experiment, ExperimentConfig, ExperimentKind, ReportFormat,
};
use syscat_core::lattice::{self, Lattice};
use syscat_core::mesh::{self, samples, TriMesh};
use syscat_core::bounds;

#[derive(Parser)]
#[command(
    name = "syscat-lab",
    about = "systolic geometry and Lusternik-Schnirelmann category laboratory",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// directory for CSV/report files
    #[arg(long)]
    out: Option<PathBuf>,
    /// report format
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a triangulated surface: topology, area, systole, ratio
    Mesh {
        /// built-in mesh name (tetrahedron, octahedron, icosahedron,
        /// torus7, rp2, rp2-unit, torus-grid, klein) or a mesh file path
        mesh: String,
        /// midpoint subdivisions before measuring
        #[arg(long, default_value_t = 0)]
        levels: usize,
        /// largest allowed Z2 first Betti number (cover has 2^b1 sheets)
        #[arg(long, default_value_t = mesh::DEFAULT_B1_CAP)]
        b1_cap: usize,
        /// run the ratio optimizer for this many sweeps
        #[arg(long)]
        iterations: Option<usize>,
        /// multiplicative step of the optimizer
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Shortest vector, covolume, and the rank-b inequality of a lattice
    Lattice {
        /// built-in name (hexagonal, d4, identity-N) or a Gram-matrix file
        lattice: String,
    },
    /// Cohomology of a free graded-commutative differential algebra
    Algebra {
        /// built-in model (su6, cp N, torus N) or an algebra file
        algebra: String,
        /// compute the triple product of three generators, e.g. "x4 x4 x6"
        #[arg(long)]
        massey: Option<String>,
        /// word-length depth of the fundamental class in this degree
        #[arg(long)]
        e0: Option<usize>,
    },
    /// Certified cat/syscat intervals from a manifold descriptor file
    Bounds {
        /// descriptor file of key: value lines (- for stdin)
        descriptor: String,
        /// also report conjectural lower bounds
        #[arg(long)]
        conjectures: bool,
    },
    /// Exact constants of the triple-systole inequality
    Constants {
        n: u64,
        p1: u64,
        p2: u64,
    },
    /// Stated cat/syscat values for named manifolds
    Known {
        /// manifold name; omit to list the whole table
        name: Option<String>,
    },
    /// Run a reproducible experiment driver
    Experiment {
        /// pu, loewner, lattice-sweep, massey-demo, or bounds-suite
        experiment: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value_t = 500)]
        iterations: usize,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        /// evaluate independent samples concurrently (deterministic merge)
        #[arg(long)]
        parallel: bool,
        /// enable conjectural bounds in the bounds-suite
        #[arg(long)]
        conjectures: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn load_mesh(spec: &str) -> Result<TriMesh, String> {
    if let Some(m) = samples::by_name(spec) {
        return Ok(m);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| format!("no built-in mesh {spec} and cannot read it as a file: {e}"))?;
    mesh::load_mesh(&text).map_err(|e| e.to_string())
}

fn load_lattice(spec: &str) -> Result<Lattice, String> {
    match spec.trim().to_ascii_lowercase().as_str() {
        "hexagonal" => return Ok(lattice::hexagonal()),
        "d4" => return Ok(lattice::d4()),
        s => {
            if let Some(rank) = s.strip_prefix("identity-") {
                let rank: usize = rank.parse().map_err(|_| format!("bad rank in {spec}"))?;
                let gram = (0..rank)
                    .map(|i| (0..rank).map(|j| f64::from(u8::from(i == j))).collect())
                    .collect();
                return Lattice::new(gram).map_err(|e| e.to_string());
            }
        }
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| format!("no built-in lattice {spec} and cannot read it as a file: {e}"))?;
    lattice::parse_lattice(&text).map_err(|e| e.to_string())
}

fn load_algebra(spec: &str) -> Result<FreeCdga, String> {
    if let Ok(a) = models::by_name(spec) {
        return Ok(a);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| format!("no built-in model {spec} and cannot read it as a file: {e}"))?;
    parse_cdga(&text).map_err(|e| e.to_string())
}

fn run_mesh(
    spec: &str,
    levels: usize,
    b1_cap: usize,
    iterations: Option<usize>,
    step: f64,
    seed: u64,
) -> Result<(), String> {
    let m = load_mesh(spec)?;
    println!(
        "mesh: {} vertices, {} faces, {} edges",
        m.n_vertices(),
        m.faces().len(),
        m.edges().len()
    );
    println!("euler characteristic: {}", m.euler_characteristic());
    println!("orientable: {}", m.orientable());
    println!("z2 betti_1: {}", m.z2_betti1());
    println!("area: {:.9}", m.area());
    if m.z2_betti1() == 0 {
        println!("no noncontractible cycles: systolic quantities undefined");
        return Ok(());
    }
    let report = mesh::systolic_ratio(&m, levels, b1_cap).map_err(|e| e.to_string())?;
    println!(
        "at level {}: systole {:.9}, area {:.9}, ratio {:.9}",
        levels, report.sysh1_z2, report.area, report.ratio
    );
    if let Some(iters) = iterations {
        let (_best, opt, _) =
            mesh::optimize_ratio_traced(&m, levels, iters, step, seed, b1_cap)
                .map_err(|e| e.to_string())?;
        println!(
            "optimized over {iters} sweeps (step {step}, seed {seed}): ratio {:.9}",
            opt.ratio
        );
    }
    Ok(())
}

fn run_lattice(spec: &str) -> Result<(), String> {
    let lat = load_lattice(spec)?;
    let sv = lat.shortest_vector();
    println!("rank: {}", lat.rank());
    println!("shortest vector: {:?}, length {:.9}", sv.coeffs, sv.length);
    println!("covolume: {:.9}", lat.covolume());
    let check = lat.check_hermite_inequality().map_err(|e| e.to_string())?;
    println!(
        "sv^rank = {:.9} vs gamma^(rank/2)*covolume = {:.9}: {}",
        check.lhs,
        check.rhs,
        if check.holds { "holds" } else { "VIOLATED" }
    );
    Ok(())
}

fn run_algebra(spec: &str, massey: Option<String>, e0: Option<usize>) -> Result<(), String> {
    let a = load_algebra(spec)?;
    let coh = Cohomology::new(&a);
    let top = a.degree_cap - 1;
    print!("betti numbers (degrees 0..{top}):");
    for n in 0..=top {
        print!(" {}", coh.dim(n).map_err(|e| e.to_string())?);
    }
    println!();
    match coh.cup_length() {
        Ok(c) => println!("cup length: {c}"),
        Err(e) => println!("cup length: not determined ({e})"),
    }
    if let Some(expr) = massey {
        let names: Vec<&str> = expr.split_whitespace().collect();
        if names.len() != 3 {
            return Err("--massey expects three generator names".into());
        }
        let class = |n: &str| coh.generator_class(n).map_err(|e| e.to_string());
        let (u, v, w) = (class(names[0])?, class(names[1])?, class(names[2])?);
        let m = coh.massey_triple(&u, &v, &w).map_err(|e| e.to_string())?;
        let rep = coh.to_polynomial(&m.representative).map_err(|e| e.to_string())?;
        println!(
            "<{}, {}, {}> in H^{}: representative {}, indeterminacy dimension {}, {}",
            names[0],
            names[1],
            names[2],
            m.degree,
            a.render(&rep),
            m.indeterminacy.len(),
            if m.nontrivial { "nontrivial" } else { "trivial" }
        );
    }
    if let Some(degree) = e0 {
        let depth = coh.toomer_e0(degree).map_err(|e| e.to_string())?;
        println!("word-length depth of the degree-{degree} fundamental class: {depth}");
    }
    Ok(())
}

fn run_bounds(descriptor: &str, conjectures: bool) -> Result<(), String> {
    let text = if descriptor == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        buf
    } else {
        std::fs::read_to_string(descriptor).map_err(|e| e.to_string())?
    };
    let desc = bounds::parse_descriptor(&text).map_err(|e| e.to_string())?;
    let cat = bounds::cat_bounds(&desc).map_err(|e| e.to_string())?;
    let sys = bounds::syscat_bounds(&desc, conjectures).map_err(|e| e.to_string())?;
    println!("cat in [{}, {}]", cat.lo, cat.hi);
    for t in &cat.trace {
        println!("  {} ({}): {}", t.rule, t.bound, t.citation);
    }
    println!("syscat in [{}, {}]", sys.lo, sys.hi);
    for t in &sys.trace {
        println!("  {} ({}): {}", t.rule, t.bound, t.citation);
    }
    if let Some((lo, trace)) = &sys.conjectural_lo {
        println!("conjectural syscat lower bound: {lo}");
        for t in trace {
            println!("  {} ({}): {}", t.rule, t.bound, t.citation);
        }
    }
    if let Some(iq) = bounds::iq_modified_syscat_lower(&desc) {
        println!("IQ-modified syscat lower bound: {iq}");
    }
    Ok(())
}

fn run_constants(n: u64, p1: u64, p2: u64) -> Result<(), String> {
    let spec = bounds::massey_inequality_spec(n, p1, p2).map_err(|e| e.to_string())?;
    println!(
        "partition of {}: p1 = {}, p2 = {}, p3 = {}",
        spec.n, spec.p1, spec.p2, spec.p3
    );
    println!("A1 = {}", spec.a1);
    println!("A2 = {}", spec.a2);
    println!("A1 + A2 = {}", &spec.a1 + &spec.a2);
    println!("{}", spec.statement);
    Ok(())
}

fn run_known(name: Option<String>) -> Result<(), String> {
    let names: Vec<String> = match name {
        Some(n) => vec![n],
        None => bounds::known_names().iter().map(|s| s.to_string()).collect(),
    };
    for n in names {
        let case = bounds::lookup_known(&n).map_err(|e| e.to_string())?;
        print!("{}: {} — cat in [{}, {}]", case.name, case.description, case.cat.0, case.cat.1);
        if let Some((lo, hi)) = case.syscat {
            print!(", syscat in [{lo}, {hi}]");
        }
        if let Some(s) = case.stable_syscat {
            print!(", stable syscat {s}");
        }
        if let Some(r) = case.rational_cat {
            print!(", rational cat {r}");
        }
        if let Some(iq) = case.iq_modified_lower {
            print!(", IQ-modified syscat lower bound {iq}");
        }
        println!();
    }
    Ok(())
}

fn run_experiment_cmd(
    experiment: &str,
    seed: u64,
    levels: usize,
    iterations: usize,
    step: f64,
    parallel: bool,
    conjectures: bool,
    output: &OutputOpts,
) -> Result<bool, String> {
    let kind = ExperimentKind::parse(experiment).map_err(|e| e.to_string())?;
    let format = ReportFormat::parse(&output.format).map_err(|e| e.to_string())?;
    let cfg = ExperimentConfig {
        experiment: kind,
        seed,
        levels,
        iterations,
        step,
        output_dir: output.out.clone(),
        parallel,
        conjectures,
    };
    let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
    if let Some(dir) = &cfg.output_dir {
        let written = emit_report(&report, format, dir).map_err(|e| e.to_string())?;
        for p in written {
            eprintln!("wrote {}", p.display());
        }
    }
    print!("{}", report.render_text());
    Ok(report.passed())
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SYSCAT_LAB_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Mesh {
            mesh,
            levels,
            b1_cap,
            iterations,
            step,
            seed,
        } => run_mesh(&mesh, levels, b1_cap, iterations, step, seed).map(|()| true),
        Command::Lattice { lattice } => run_lattice(&lattice).map(|()| true),
        Command::Algebra { algebra, massey, e0 } => {
            run_algebra(&algebra, massey, e0).map(|()| true)
        }
        Command::Bounds {
            descriptor,
            conjectures,
        } => run_bounds(&descriptor, conjectures).map(|()| true),
        Command::Constants { n, p1, p2 } => run_constants(n, p1, p2).map(|()| true),
        Command::Known { name } => run_known(name).map(|()| true),
        Command::Experiment {
            experiment,
            seed,
            levels,
            iterations,
            step,
            parallel,
            conjectures,
            output,
        } => run_experiment_cmd(
            &experiment,
            seed,
            levels,
            iterations,
            step,
            parallel,
            conjectures,
            &output,
        ),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
