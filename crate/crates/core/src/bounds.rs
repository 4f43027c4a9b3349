//! Rule engine for certified intervals on the Lusternik-Schnirelmann
//! category cat(M) and the systolic category syscat(M) of a closed
//! manifold, from a descriptor of known topological facts.
//!
//! Every rule fires only when its hypotheses are affirmatively known;
//! `unknown` never triggers anything, so the output intervals are sound
//! (possibly wide) for every consistent descriptor. Each contributed bound
//! carries a trace entry quoting the theorem it rests on. Conjectural
//! strengthenings are kept strictly separate from the certified interval.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent descriptor: {0}")]
    InconsistentDescriptor(String),
    #[error("invalid partition: n - (2 p1 + p2 - 1) = {p3} must be >= 1")]
    InvalidPartition { p3: i64 },
    #[error("unknown manifold name {0}")]
    UnknownName(String),
}

/// Three-valued topological fact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Tri {
    Yes,
    No,
    #[default]
    Unknown,
}

/// What is known about the fundamental group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pi1 {
    Trivial,
    /// free of the given rank >= 1
    Free(u32),
    Other,
    #[default]
    Unknown,
}

/// Known topological facts about one closed connected manifold.
#[derive(Clone, Debug, Default)]
pub struct ManifoldDescriptor {
    pub dim: usize,
    pub orientable: Tri,
    pub pi1: Pi1,
    pub essential: Tri,
    /// rational Betti numbers b_0..b_dim, when known
    pub betti_q: Option<Vec<u64>>,
    /// the space is (k-1)-connected
    pub connectivity_k: Option<usize>,
    /// cup-length over the reals
    pub cuplength_r: Option<usize>,
    /// cup-length over some coefficient ring
    pub cuplength_any: Option<usize>,
    pub massey_nontrivial: Tri,
    /// nonvanishing of the fiber class of the Jacobi torus map
    pub jacobi_fiber_nonzero: Tri,
    pub is_homotopy_sphere: Tri,
}

impl ManifoldDescriptor {
    pub fn new(dim: usize) -> Self {
        ManifoldDescriptor {
            dim,
            ..Default::default()
        }
    }

    /// Internal consistency of the supplied facts.
    pub fn validate(&self) -> Result<(), BoundsError> {
        if self.dim == 0 {
            return Err(BoundsError::Parse("dim must be >= 1".into()));
        }
        if let Some(b) = &self.betti_q {
            if b.len() != self.dim + 1 {
                return Err(BoundsError::Parse(format!(
                    "betti_q must list b_0..b_{}",
                    self.dim
                )));
            }
            if b[0] != 1 {
                return Err(BoundsError::InconsistentDescriptor(
                    "b_0 must be 1 for a connected manifold".into(),
                ));
            }
            if self.pi1 == Pi1::Trivial && self.dim >= 1 && b[1] != 0 {
                return Err(BoundsError::InconsistentDescriptor(
                    "trivial pi_1 forces b_1 = 0".into(),
                ));
            }
        }
        if self.essential == Tri::Yes
            && self.dim >= 2
            && matches!(self.pi1, Pi1::Trivial | Pi1::Free(_))
        {
            return Err(BoundsError::InconsistentDescriptor(
                "manifolds with trivial or free pi_1 are inessential".into(),
            ));
        }
        if self.essential == Tri::No && self.dim == 3 && self.pi1 == Pi1::Other {
            return Err(BoundsError::InconsistentDescriptor(
                "a closed 3-manifold whose pi_1 is neither trivial nor free is essential".into(),
            ));
        }
        if let Some(k) = self.connectivity_k {
            if k >= 2 && !matches!(self.pi1, Pi1::Trivial | Pi1::Unknown) {
                return Err(BoundsError::InconsistentDescriptor(
                    "1-connected spaces have trivial pi_1".into(),
                ));
            }
        }
        Ok(())
    }

    /// Essentiality when it is forced by other known fields: simply
    /// connected or free-pi_1 closed manifolds of dimension >= 2 are
    /// inessential (their classifying map factors through a wedge of
    /// circles), and a closed 3-manifold whose pi_1 is neither trivial
    /// nor free is essential.
    fn effective_essential(&self) -> Tri {
        if self.essential != Tri::Unknown {
            return self.essential;
        }
        if self.dim >= 2 && matches!(self.pi1, Pi1::Trivial | Pi1::Free(_)) {
            return Tri::No;
        }
        if self.dim == 3 && self.pi1 == Pi1::Other {
            return Tri::Yes;
        }
        Tri::Unknown
    }
}

/// One contributed bound with its justification.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceEntry {
    pub rule: &'static str,
    pub citation: &'static str,
    pub bound: String,
}

/// A certified interval lo..=hi (1 <= lo <= hi <= dim) with the rules that
/// produced it; `conjectural_lo` is populated only in conjecture mode and
/// never feeds back into the certified bounds.
#[derive(Clone, Debug)]
pub struct BoundInterval {
    pub lo: usize,
    pub hi: usize,
    pub trace: Vec<TraceEntry>,
    pub conjectural_lo: Option<(usize, Vec<TraceEntry>)>,
}

struct Builder {
    dim: usize,
    lo: usize,
    hi: usize,
    trace: Vec<TraceEntry>,
}

impl Builder {
    fn new(dim: usize, base_rule: &'static str, base_cite: &'static str) -> Self {
        Builder {
            dim,
            lo: 1,
            hi: dim,
            trace: vec![TraceEntry {
                rule: base_rule,
                citation: base_cite,
                bound: format!("1 <= value <= {dim}"),
            }],
        }
    }

    fn raise_lo(&mut self, v: usize, rule: &'static str, citation: &'static str) {
        if v > self.lo {
            self.lo = v;
        }
        self.trace.push(TraceEntry {
            rule,
            citation,
            bound: format!(">= {v}"),
        });
    }

    fn drop_hi(&mut self, v: usize, rule: &'static str, citation: &'static str) {
        if v < self.hi {
            self.hi = v;
        }
        self.trace.push(TraceEntry {
            rule,
            citation,
            bound: format!("<= {v}"),
        });
    }

    fn pin(&mut self, v: usize, rule: &'static str, citation: &'static str) {
        if v > self.lo {
            self.lo = v;
        }
        if v < self.hi {
            self.hi = v;
        }
        self.trace.push(TraceEntry {
            rule,
            citation,
            bound: format!("= {v}"),
        });
    }

    fn finish(self, what: &str) -> Result<BoundInterval, BoundsError> {
        let _ = self.dim;
        if self.lo > self.hi {
            return Err(BoundsError::InconsistentDescriptor(format!(
                "{what} bounds collapse: lower {} exceeds upper {}",
                self.lo, self.hi
            )));
        }
        Ok(BoundInterval {
            lo: self.lo,
            hi: self.hi,
            trace: self.trace,
            conjectural_lo: None,
        })
    }
}

/// Certified interval for cat(M).
pub fn cat_bounds(desc: &ManifoldDescriptor) -> Result<BoundInterval, BoundsError> {
    desc.validate()?;
    let dim = desc.dim;
    let mut b = Builder::new(
        dim,
        "R-cat-1",
        "normalized category of a closed manifold lies between 1 and its dimension",
    );
    match desc.effective_essential() {
        Tri::Yes => b.pin(
            dim,
            "R-cat-2",
            "an essential closed manifold has cat equal to its dimension",
        ),
        Tri::No => {
            if dim >= 2 {
                b.drop_hi(
                    dim - 1,
                    "R-cat-3",
                    "cat reaches the dimension only for essential manifolds",
                );
            }
        }
        Tri::Unknown => {}
    }
    if dim == 3 {
        match desc.pi1 {
            Pi1::Trivial => b.pin(
                1,
                "R-cat-4",
                "closed 3-manifolds: cat is 1 for trivial pi_1",
            ),
            Pi1::Free(_) => b.pin(
                2,
                "R-cat-4",
                "closed 3-manifolds: cat is 2 for free nontrivial pi_1",
            ),
            Pi1::Other => b.pin(
                3,
                "R-cat-4",
                "closed 3-manifolds: cat is 3 when pi_1 is neither trivial nor free",
            ),
            Pi1::Unknown => {}
        }
    }
    if let Some(k) = desc.connectivity_k {
        if k >= 1 {
            b.drop_hi(
                dim / k,
                "R-cat-5",
                "a (k-1)-connected space has cat at most dim/k",
            );
        }
    }
    if (dim == 4 || dim == 5)
        && desc.pi1 == Pi1::Trivial
        && desc.is_homotopy_sphere == Tri::No
    {
        b.pin(
            2,
            "R-cat-6",
            "simply connected non-sphere 4- and 5-manifolds have cat exactly 2",
        );
    }
    if let Some(c) = desc.cuplength_any {
        b.raise_lo(
            c,
            "R-cat-7",
            "cat is at least the cup-length over any coefficient ring",
        );
    }
    if dim == 2 {
        match desc.is_homotopy_sphere {
            Tri::Yes => b.pin(1, "R-cat-8", "cat of the 2-sphere is 1"),
            Tri::No => b.pin(2, "R-cat-8", "every closed non-sphere surface has cat 2"),
            Tri::Unknown => {}
        }
    }
    b.finish("cat")
}

/// Certified interval for syscat(M); conjectural strengthenings are
/// reported separately and only when `conjecture_mode` is set.
pub fn syscat_bounds(
    desc: &ManifoldDescriptor,
    conjecture_mode: bool,
) -> Result<BoundInterval, BoundsError> {
    desc.validate()?;
    let dim = desc.dim;
    let mut b = Builder::new(
        dim,
        "R-sys-1",
        "systolic category of a closed manifold lies between 1 and its dimension",
    );
    match desc.effective_essential() {
        Tri::Yes => b.pin(
            dim,
            "R-sys-2",
            "essential manifolds satisfy the homotopy-systole volume inequality, so syscat equals the dimension",
        ),
        Tri::No => {}
        Tri::Unknown => {}
    }
    // syscat = dim iff cat = dim
    let cat = cat_bounds(desc)?;
    if cat.hi < dim {
        b.drop_hi(
            dim - 1,
            "R-sys-3",
            "syscat equals the dimension exactly when cat does",
        );
    }
    if cat.lo == dim {
        b.raise_lo(
            dim,
            "R-sys-3",
            "syscat equals the dimension exactly when cat does",
        );
    }
    if desc.orientable == Tri::Yes {
        if let Some(betti) = &desc.betti_q {
            if (1..dim).any(|k| betti[k] >= 1) {
                b.raise_lo(
                    2,
                    "R-sys-4",
                    "an orientable manifold with an interior Betti number has syscat at least 2",
                );
            }
        }
    }
    if let Some(c) = desc.cuplength_r {
        b.raise_lo(
            c,
            "R-sys-5",
            "syscat is at least the real cup-length",
        );
    }
    if desc.jacobi_fiber_nonzero == Tri::Yes {
        if let Some(betti) = &desc.betti_q {
            b.raise_lo(
                betti[1] as usize + 1,
                "R-sys-6",
                "a nonzero Jacobi-torus fiber class gives syscat at least b_1 + 1",
            );
        }
    }
    if dim == 3 {
        match (desc.pi1, desc.orientable) {
            (Pi1::Trivial, _) => b.pin(1, "R-sys-7", "syscat of a homotopy 3-sphere is 1"),
            (Pi1::Other, _) => b.pin(
                3,
                "R-sys-7",
                "closed 3-manifolds with pi_1 neither trivial nor free have syscat 3",
            ),
            (Pi1::Free(_), Tri::Yes) => b.pin(
                2,
                "R-sys-7",
                "orientable 3-manifolds with free nontrivial pi_1 have syscat 2",
            ),
            (Pi1::Free(_), Tri::No) => {
                b.drop_hi(
                    2,
                    "R-sys-7",
                    "non-orientable 3-manifolds with free pi_1 only have the bound syscat <= cat = 2",
                );
            }
            _ => {}
        }
    }
    if dim == 2 {
        match desc.is_homotopy_sphere {
            Tri::Yes => b.pin(1, "R-sys-8", "syscat of the 2-sphere is 1"),
            Tri::No => b.pin(
                2,
                "R-sys-8",
                "cat and syscat agree on closed surfaces, hence 2 off the sphere",
            ),
            Tri::Unknown => {}
        }
    }
    let mut interval = b.finish("syscat")?;
    if conjecture_mode {
        if let Some(c) = desc.cuplength_any {
            if c > interval.lo {
                interval.conjectural_lo = Some((
                    c,
                    vec![TraceEntry {
                        rule: "C-sys-1",
                        citation: "conjecturally, syscat is at least the cup-length over every coefficient ring",
                        bound: format!(">= {c} (conjectural)"),
                    }],
                ));
            }
        }
    }
    Ok(interval)
}

/// The exact constants of the triple-systole inequality
/// stsys_{p1}^2 stsys_{p2} stsys_{p3} <= (A1 + A2) IQ(G) vol_n(G).
#[derive(Clone, Debug)]
pub struct InequalitySpec {
    pub n: u64,
    pub p1: u64,
    pub p2: u64,
    pub p3: u64,
    pub a1: BigRational,
    pub a2: BigRational,
    pub statement: String,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

fn binomial(n: u64, k: u64) -> BigInt {
    assert!(k <= n);
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// A_j = n! / (p_j! (p1+p_j)! p3!) * C(p1+p_j, p1) for j = 1, 2.
pub fn massey_inequality_spec(n: u64, p1: u64, p2: u64) -> Result<InequalitySpec, BoundsError> {
    let p3 = n as i64 - (2 * p1 + p2 - 1) as i64;
    if p3 < 1 {
        return Err(BoundsError::InvalidPartition { p3 });
    }
    let p3 = p3 as u64;
    let a = |pj: u64| -> BigRational {
        let num = BigRational::from_integer(factorial(n) * binomial(p1 + pj, p1));
        let den = BigRational::from_integer(factorial(pj) * factorial(p1 + pj) * factorial(p3));
        num / den
    };
    let a1 = a(p1);
    let a2 = a(p2);
    let statement = format!(
        "stsys_{p1}(G)^2 * stsys_{p2}(G) * stsys_{p3}(G) <= ({a1} + {a2}) * IQ(G) * vol_{n}(G)"
    );
    Ok(InequalitySpec {
        n,
        p1,
        p2,
        p3,
        a1,
        a2,
        statement,
    })
}

/// The IQ-modified systolic category lower bound: when a nontrivial Massey
/// triple product provides the four-systole inequality (with one
/// isoperimetric-quotient factor), the modified category is at least
/// 4 - 1 = 3. Returns None unless the hypotheses are affirmatively known.
pub fn iq_modified_syscat_lower(desc: &ManifoldDescriptor) -> Option<usize> {
    if desc.massey_nontrivial != Tri::Yes {
        return None;
    }
    let betti = desc.betti_q.as_ref()?;
    // the inequality needs three interior Betti numbers equal to 1
    if betti[1..desc.dim].iter().filter(|&&b| b == 1).count() < 2 {
        return None;
    }
    Some(3)
}

/// A named manifold with its established cat/syscat values.
#[derive(Clone, Debug)]
pub struct KnownCase {
    pub name: &'static str,
    pub description: &'static str,
    pub cat: (usize, usize),
    pub syscat: Option<(usize, usize)>,
    pub stable_syscat: Option<usize>,
    pub rational_cat: Option<usize>,
    pub iq_modified_lower: Option<usize>,
    pub descriptor: ManifoldDescriptor,
}

/// Table of stated values for named manifolds.
pub fn lookup_known(name: &str) -> Result<KnownCase, BoundsError> {
    let key = name.trim().to_ascii_lowercase();
    let case = match key.as_str() {
        "rp3" => KnownCase {
            name: "rp3",
            description: "real projective 3-space",
            cat: (3, 3),
            syscat: Some((3, 3)),
            stable_syscat: None,
            rational_cat: None,
            iq_modified_lower: None,
            descriptor: ManifoldDescriptor {
                dim: 3,
                orientable: Tri::Yes,
                pi1: Pi1::Other,
                ..ManifoldDescriptor::new(3)
            },
        },
        "s2" => KnownCase {
            name: "s2",
            description: "the 2-sphere",
            cat: (1, 1),
            syscat: Some((1, 1)),
            stable_syscat: None,
            rational_cat: None,
            iq_modified_lower: None,
            descriptor: ManifoldDescriptor {
                dim: 2,
                orientable: Tri::Yes,
                pi1: Pi1::Trivial,
                is_homotopy_sphere: Tri::Yes,
                ..ManifoldDescriptor::new(2)
            },
        },
        "t2" => KnownCase {
            name: "t2",
            description: "the 2-torus",
            cat: (2, 2),
            syscat: Some((2, 2)),
            stable_syscat: None,
            rational_cat: None,
            iq_modified_lower: None,
            descriptor: ManifoldDescriptor {
                dim: 2,
                orientable: Tri::Yes,
                pi1: Pi1::Other,
                essential: Tri::Yes,
                is_homotopy_sphere: Tri::No,
                ..ManifoldDescriptor::new(2)
            },
        },
        "rp2" => KnownCase {
            name: "rp2",
            description: "the projective plane",
            cat: (2, 2),
            syscat: Some((2, 2)),
            stable_syscat: None,
            rational_cat: None,
            iq_modified_lower: None,
            descriptor: ManifoldDescriptor {
                dim: 2,
                orientable: Tri::No,
                pi1: Pi1::Other,
                essential: Tri::Yes,
                is_homotopy_sphere: Tri::No,
                ..ManifoldDescriptor::new(2)
            },
        },
        "cp3" => KnownCase {
            name: "cp3",
            description: "complex projective 3-space",
            cat: (3, 3),
            syscat: Some((3, 3)),
            stable_syscat: None,
            rational_cat: None,
            iq_modified_lower: None,
            descriptor: ManifoldDescriptor {
                dim: 6,
                orientable: Tri::Yes,
                pi1: Pi1::Trivial,
                cuplength_r: Some(3),
                cuplength_any: Some(3),
                betti_q: Some(vec![1, 0, 1, 0, 1, 0, 1]),
                ..ManifoldDescriptor::new(6)
            },
        },
        "singhof-m16" => KnownCase {
            name: "singhof-m16",
            description: "Singhof's 16-dimensional homogeneous example",
            cat: (3, 3),
            syscat: None,
            stable_syscat: Some(2),
            rational_cat: None,
            iq_modified_lower: None,
            descriptor: ManifoldDescriptor {
                dim: 16,
                orientable: Tri::Yes,
                pi1: Pi1::Trivial,
                ..ManifoldDescriptor::new(16)
            },
        },
        "m19" => KnownCase {
            name: "m19",
            description: "the 19-dimensional biquotient with nontrivial Massey product",
            cat: (3, 4),
            syscat: None,
            stable_syscat: None,
            rational_cat: Some(3),
            iq_modified_lower: Some(3),
            descriptor: ManifoldDescriptor {
                dim: 19,
                orientable: Tri::Yes,
                pi1: Pi1::Trivial,
                connectivity_k: Some(4),
                cuplength_any: Some(3),
                massey_nontrivial: Tri::Yes,
                betti_q: Some(vec![
                    1, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 1,
                ]),
                ..ManifoldDescriptor::new(19)
            },
        },
        "smale-mk" => KnownCase {
            name: "smale-mk",
            description: "Smale's simply connected 5-manifolds M_k",
            cat: (2, 2),
            syscat: None,
            stable_syscat: None,
            rational_cat: None,
            iq_modified_lower: None,
            descriptor: ManifoldDescriptor {
                dim: 5,
                orientable: Tri::Yes,
                pi1: Pi1::Trivial,
                is_homotopy_sphere: Tri::No,
                betti_q: Some(vec![1, 0, 0, 0, 0, 1]),
                cuplength_any: Some(2),
                ..ManifoldDescriptor::new(5)
            },
        },
        _ => return Err(BoundsError::UnknownName(name.to_string())),
    };
    Ok(case)
}

/// All table names, for enumeration in reports.
pub fn known_names() -> &'static [&'static str] {
    &["rp3", "s2", "t2", "rp2", "cp3", "singhof-m16", "m19", "smale-mk"]
}

/// Parses a descriptor from `key: value` lines; omitted keys stay unknown.
pub fn parse_descriptor(text: &str) -> Result<ManifoldDescriptor, BoundsError> {
    let mut desc = ManifoldDescriptor::default();
    let mut saw_dim = false;
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| BoundsError::Parse(format!("expected key: value, got {line}")))?;
        let key = key.trim().to_ascii_lowercase();
        let value = value.trim();
        let tri = |v: &str| -> Result<Tri, BoundsError> {
            match v.to_ascii_lowercase().as_str() {
                "yes" | "true" => Ok(Tri::Yes),
                "no" | "false" => Ok(Tri::No),
                "unknown" => Ok(Tri::Unknown),
                _ => Err(BoundsError::Parse(format!("expected yes/no/unknown, got {v}"))),
            }
        };
        let num = |v: &str| -> Result<usize, BoundsError> {
            v.parse()
                .map_err(|_| BoundsError::Parse(format!("bad number: {v}")))
        };
        match key.as_str() {
            "dim" => {
                desc.dim = num(value)?;
                saw_dim = true;
            }
            "orientable" => desc.orientable = tri(value)?,
            "pi1" => {
                let v = value.to_ascii_lowercase();
                desc.pi1 = if v == "trivial" {
                    Pi1::Trivial
                } else if v == "other" {
                    Pi1::Other
                } else if v == "unknown" {
                    Pi1::Unknown
                } else if let Some(r) = v.strip_prefix("free") {
                    let r = r.trim_matches(|c: char| c == '(' || c == ')' || c.is_whitespace());
                    let rank: u32 = if r.is_empty() {
                        1
                    } else {
                        r.parse()
                            .map_err(|_| BoundsError::Parse(format!("bad free rank: {value}")))?
                    };
                    if rank == 0 {
                        return Err(BoundsError::Parse("free rank must be >= 1".into()));
                    }
                    Pi1::Free(rank)
                } else {
                    return Err(BoundsError::Parse(format!("bad pi1 value: {value}")));
                };
            }
            "essential" => desc.essential = tri(value)?,
            "betti_q" => {
                let parsed: Result<Vec<u64>, _> = value
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(str::parse)
                    .collect();
                desc.betti_q =
                    Some(parsed.map_err(|_| {
                        BoundsError::Parse(format!("bad betti_q list: {value}"))
                    })?);
            }
            "connectivity_k" => desc.connectivity_k = Some(num(value)?),
            "cuplength_r" => desc.cuplength_r = Some(num(value)?),
            "cuplength_any" => desc.cuplength_any = Some(num(value)?),
            "massey_nontrivial" => desc.massey_nontrivial = tri(value)?,
            "jacobi_fiber_nonzero" => desc.jacobi_fiber_nonzero = tri(value)?,
            "is_homotopy_sphere" => desc.is_homotopy_sphere = tri(value)?,
            _ => return Err(BoundsError::Parse(format!("unknown key: {key}"))),
        }
    }
    if !saw_dim {
        return Err(BoundsError::Parse("missing dim".into()));
    }
    desc.validate()?;
    Ok(desc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rp3_is_pinned_to_three() {
        let d = lookup_known("rp3").unwrap().descriptor;
        let cat = cat_bounds(&d).unwrap();
        assert_eq!((cat.lo, cat.hi), (3, 3));
        let sys = syscat_bounds(&d, false).unwrap();
        assert_eq!((sys.lo, sys.hi), (3, 3));
    }

    #[test]
    fn sphere_and_surfaces() {
        let s2 = lookup_known("s2").unwrap().descriptor;
        assert_eq!(cat_bounds(&s2).unwrap().lo, 1);
        assert_eq!(cat_bounds(&s2).unwrap().hi, 1);
        assert_eq!(syscat_bounds(&s2, false).unwrap().hi, 1);
        for name in ["t2", "rp2"] {
            let d = lookup_known(name).unwrap().descriptor;
            let cat = cat_bounds(&d).unwrap();
            let sys = syscat_bounds(&d, false).unwrap();
            assert_eq!((cat.lo, cat.hi), (2, 2), "{name}");
            assert_eq!((sys.lo, sys.hi), (2, 2), "{name}");
        }
    }

    #[test]
    fn s1_times_s2_has_syscat_two() {
        let d = ManifoldDescriptor {
            dim: 3,
            orientable: Tri::Yes,
            pi1: Pi1::Free(1),
            betti_q: Some(vec![1, 1, 1, 1]),
            ..ManifoldDescriptor::new(3)
        };
        let sys = syscat_bounds(&d, false).unwrap();
        assert_eq!((sys.lo, sys.hi), (2, 2));
        let cat = cat_bounds(&d).unwrap();
        assert_eq!((cat.lo, cat.hi), (2, 2));
    }

    #[test]
    fn nonorientable_free_pi1_3manifold() {
        let d = ManifoldDescriptor {
            dim: 3,
            orientable: Tri::No,
            pi1: Pi1::Free(1),
            ..ManifoldDescriptor::new(3)
        };
        let sys = syscat_bounds(&d, false).unwrap();
        assert_eq!((sys.lo, sys.hi), (1, 2));
    }

    #[test]
    fn cp3_certified_interval() {
        let d = lookup_known("cp3").unwrap().descriptor;
        let sys = syscat_bounds(&d, false).unwrap();
        assert_eq!((sys.lo, sys.hi), (3, 5));
        assert!(sys.trace.iter().any(|t| t.rule == "R-sys-5"));
        assert!(sys.trace.iter().any(|t| t.rule == "R-sys-3"));
    }

    #[test]
    fn m19_cat_interval_and_iq_bound() {
        let d = lookup_known("m19").unwrap().descriptor;
        let cat = cat_bounds(&d).unwrap();
        assert_eq!((cat.lo, cat.hi), (3, 4));
        assert_eq!(iq_modified_syscat_lower(&d), Some(3));
        let mut no = d.clone();
        no.massey_nontrivial = Tri::No;
        assert_eq!(iq_modified_syscat_lower(&no), None);
        no.massey_nontrivial = Tri::Unknown;
        assert_eq!(iq_modified_syscat_lower(&no), None);
    }

    #[test]
    fn smale_certified_and_conjectural() {
        let d = lookup_known("smale-mk").unwrap().descriptor;
        let cat = cat_bounds(&d).unwrap();
        assert_eq!((cat.lo, cat.hi), (2, 2));
        // drop the sphere flag to match the conjecture-mode example: only
        // Betti numbers and a torsion cup-length are known
        let mut weak = d.clone();
        weak.is_homotopy_sphere = Tri::Unknown;
        let certified = syscat_bounds(&weak, false).unwrap();
        assert_eq!((certified.lo, certified.hi), (1, 4));
        assert!(certified.conjectural_lo.is_none());
        let conj = syscat_bounds(&weak, true).unwrap();
        assert_eq!((conj.lo, conj.hi), (1, 4));
        assert_eq!(conj.conjectural_lo.as_ref().unwrap().0, 2);
    }

    #[test]
    fn conjecture_isolation() {
        for name in known_names() {
            let d = lookup_known(name).unwrap().descriptor;
            let sys = syscat_bounds(&d, false).unwrap();
            assert!(sys.conjectural_lo.is_none(), "{name}");
            assert!(sys.trace.iter().all(|t| t.rule != "C-sys-1"), "{name}");
        }
    }

    #[test]
    fn known_values_lie_in_engine_intervals() {
        for name in known_names() {
            let case = lookup_known(name).unwrap();
            let cat = cat_bounds(&case.descriptor).unwrap();
            assert!(
                cat.lo <= case.cat.0 && case.cat.1 <= cat.hi,
                "{name}: stated cat {:?} outside engine [{}, {}]",
                case.cat,
                cat.lo,
                cat.hi
            );
            if let Some(sys_stated) = case.syscat {
                let sys = syscat_bounds(&case.descriptor, false).unwrap();
                assert!(
                    sys.lo <= sys_stated.0 && sys_stated.1 <= sys.hi,
                    "{name}: stated syscat {sys_stated:?} outside engine [{}, {}]",
                    sys.lo,
                    sys.hi
                );
            }
        }
    }

    #[test]
    fn inequality_constants() {
        let s = massey_inequality_spec(4, 1, 1).unwrap();
        assert_eq!(s.p3, 2);
        assert_eq!(s.a1, BigRational::from_integer(12.into()));
        assert_eq!(s.a2, BigRational::from_integer(12.into()));

        let s19 = massey_inequality_spec(19, 4, 6).unwrap();
        assert_eq!(s19.p3, 6);
        let sum = &s19.a1 + &s19.a2;
        assert!(sum <= BigRational::from_integer(factorial(19)));

        assert_eq!(
            massey_inequality_spec(5, 2, 2).unwrap_err(),
            BoundsError::InvalidPartition { p3: 0 }
        );
    }

    #[test]
    fn inconsistent_descriptor_is_rejected() {
        // claimed essential but simply connected in dim 3: cat would have
        // to be both 1 and 3
        let d = ManifoldDescriptor {
            dim: 3,
            pi1: Pi1::Trivial,
            essential: Tri::Yes,
            ..ManifoldDescriptor::new(3)
        };
        assert!(matches!(
            cat_bounds(&d),
            Err(BoundsError::InconsistentDescriptor(_))
        ));
    }

    #[test]
    fn descriptor_parsing() {
        let d = parse_descriptor(
            "dim: 3\norientable: yes\npi1: free 1\nbetti_q: 1 1 1 1\n",
        )
        .unwrap();
        assert_eq!(d.dim, 3);
        assert_eq!(d.pi1, Pi1::Free(1));
        assert!(parse_descriptor("orientable: yes\n").is_err());
        assert!(parse_descriptor("dim: 3\npi1: banana\n").is_err());
        assert!(parse_descriptor("dim: 2\nbetti_q: 2 0 1\n").is_err());
    }
}
