//! Flat tori as lattices: exact shortest vectors, covolumes, and the
//! rank-b Hermite inequality sv^b <= gamma_b^{b/2} * covolume.
//!
//! A lattice is given by the Gram matrix of a basis (entries in squared
//! length units). The stable 1-systole of the corresponding flat torus is
//! the length of a shortest nonzero lattice vector, found here by size
//! reduction followed by exact Fincke-Pohst enumeration.

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Gram matrix is not symmetric positive definite")]
    NotPositiveDefinite,
    #[error("unsupported rank {0}: Hermite constants stored for ranks 1..=4")]
    UnsupportedRank(usize),
}

/// A full-rank lattice, i.e. a flat torus R^b / L, via a Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    gram: Vec<Vec<f64>>,
}

/// A shortest nonzero lattice vector in basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortestVectorResult {
    pub coeffs: Vec<i64>,
    pub length: f64,
}

/// Outcome of checking sv^b <= gamma_b^{b/2} * covolume on one lattice.
#[derive(Clone, Debug)]
pub struct HermiteCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub equality: bool,
}

const TOL: f64 = 1e-9;

impl Lattice {
    /// Validates symmetry (to 1e-12 relative) and positive definiteness.
    pub fn new(gram: Vec<Vec<f64>>) -> Result<Self, LatticeError> {
        let b = gram.len();
        if b == 0 || b > 8 || gram.iter().any(|r| r.len() != b) {
            return Err(LatticeError::Parse(format!(
                "rank must be 1..=8 with square Gram, got {b} rows"
            )));
        }
        for i in 0..b {
            for j in 0..b {
                let scale = gram[i][i].abs().max(gram[j][j].abs()).max(1.0);
                if (gram[i][j] - gram[j][i]).abs() > 1e-12 * scale {
                    return Err(LatticeError::Parse(format!(
                        "Gram matrix is not symmetric at ({i},{j})"
                    )));
                }
                if !gram[i][j].is_finite() {
                    return Err(LatticeError::Parse("non-finite Gram entry".into()));
                }
            }
        }
        let lat = Lattice { gram };
        if cholesky(&lat.gram).is_none() {
            return Err(LatticeError::NotPositiveDefinite);
        }
        Ok(lat)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<f64>] {
        &self.gram
    }

    /// sqrt(det gram) — the volume of the flat torus.
    pub fn covolume(&self) -> f64 {
        let l = cholesky(&self.gram).expect("validated at construction");
        (0..self.rank()).map(|i| l[i][i]).product()
    }

    /// Exact shortest nonzero vector: size-reduce the basis, enumerate all
    /// integer vectors of squared length <= min diagonal entry via
    /// Fincke-Pohst, and break ties by the lexicographically greatest
    /// coefficient vector after making the first nonzero entry positive.
    pub fn shortest_vector(&self) -> ShortestVectorResult {
        let b = self.rank();
        let (g, u) = size_reduce(&self.gram);
        let bound = (0..b).map(|i| g[i][i]).fold(f64::INFINITY, f64::min);
        let l = cholesky(&g).expect("size reduction preserves definiteness");
        // R = L^T: upper triangular with ||R c||^2 = c^T G c
        let mut best_sq = f64::INFINITY;
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        let mut c = vec![0i64; b];
        enumerate(
            &l,
            b,
            bound * (1.0 + 1e-12),
            &mut c,
            0.0,
            &mut best_sq,
            &mut candidates,
        );
        // map minimizers back to the original basis and canonicalize
        let mut mapped: Vec<Vec<i64>> = candidates
            .iter()
            .map(|c| {
                let mut v = vec![0i64; b];
                for (j, cj) in c.iter().enumerate() {
                    for i in 0..b {
                        v[i] += u[i][j] * cj;
                    }
                }
                if let Some(first) = v.iter().find(|x| **x != 0) {
                    if *first < 0 {
                        for x in v.iter_mut() {
                            *x = -*x;
                        }
                    }
                }
                v
            })
            .collect();
        mapped.sort();
        let coeffs = mapped.pop().expect("a nonzero vector within the bound exists");
        ShortestVectorResult {
            length: quad_form(&self.gram, &coeffs).sqrt(),
            coeffs,
        }
    }

    /// Checks sv^b <= gamma_b^{b/2} * covolume (the flat-torus case of the
    /// Hermite inequality, where the Abel-Jacobi map has degree 1).
    pub fn check_hermite_inequality(&self) -> Result<HermiteCheck, LatticeError> {
        let b = self.rank();
        let gamma = hermite_constant(b)?;
        let sv = self.shortest_vector();
        let lhs = sv.length.powi(b as i32);
        let rhs = gamma.powf(b as f64 / 2.0) * self.covolume();
        Ok(HermiteCheck {
            lhs,
            rhs,
            holds: lhs <= rhs + TOL,
            equality: (lhs - rhs).abs() <= TOL * rhs,
        })
    }
}

fn quad_form(g: &[Vec<f64>], c: &[i64]) -> f64 {
    let b = g.len();
    let mut s = 0.0;
    for i in 0..b {
        for j in 0..b {
            s += c[i] as f64 * g[i][j] * c[j] as f64;
        }
    }
    s
}

/// Lower-triangular Cholesky factor, or None when not positive definite.
fn cholesky(g: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let b = g.len();
    let mut l = vec![vec![0.0; b]; b];
    for i in 0..b {
        for j in 0..=i {
            let mut s = g[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

/// Pairwise size reduction with unimodular tracking: returns (G', U) with
/// G' = U^T G U and moderate off-diagonal entries. No vector swaps are
/// needed: the enumeration below is exact for any valid bound.
fn size_reduce(g: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<i64>>) {
    let b = g.len();
    let mut g = g.to_vec();
    let mut u: Vec<Vec<i64>> = (0..b)
        .map(|i| (0..b).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..32 {
        let mut changed = false;
        for j in 0..b {
            for i in 0..b {
                if i == j {
                    continue;
                }
                let k = (g[i][j] / g[i][i]).round();
                if k != 0.0 && k.abs() < 1e15 {
                    let ki = k as i64;
                    // column op: b_j <- b_j - k b_i
                    for r in 0..b {
                        u[r][j] -= ki * u[r][i];
                    }
                    for r in 0..b {
                        g[r][j] -= k * g[r][i];
                    }
                    for cidx in 0..b {
                        g[j][cidx] -= k * g[i][cidx];
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (g, u)
}

/// Fincke-Pohst: depth-first over coordinates b-1..0 of c with partial
/// squared norms against the upper-triangular factor R = L^T. Collects all
/// nonzero c with ||Rc||^2 within 1e-12 (relative) of the running minimum.
fn enumerate(
    l: &[Vec<f64>],
    level: usize,
    bound: f64,
    c: &mut Vec<i64>,
    partial: f64,
    best_sq: &mut f64,
    out: &mut Vec<Vec<i64>>,
) {
    if level == 0 {
        if c.iter().any(|x| *x != 0) {
            let tol = 1e-12 * partial.max(1.0);
            if partial < *best_sq - tol {
                *best_sq = partial;
                out.retain(|v| quad_form_r(l, v) <= *best_sq * (1.0 + 1e-12) + 1e-300);
            }
            if partial <= *best_sq * (1.0 + 1e-12) {
                out.push(c.clone());
            }
        }
        return;
    }
    let i = level - 1;
    // (Rc)_i = sum_{j>=i} R[i][j] c_j = sum_{j>=i} L[j][i] c_j
    let mut off = 0.0;
    for j in i + 1..c.len() {
        off += l[j][i] * c[j] as f64;
    }
    let rii = l[i][i];
    let remaining = (bound.min(*best_sq * (1.0 + 1e-9)) - partial).max(0.0);
    let radius = remaining.sqrt() / rii;
    let center = -off / rii;
    let lo = (center - radius - 1e-9).ceil() as i64;
    let hi = (center + radius + 1e-9).floor() as i64;
    for ci in lo..=hi {
        c[i] = ci;
        let coord = rii * ci as f64 + off;
        enumerate(l, i, bound, c, partial + coord * coord, best_sq, out);
    }
    c[i] = 0;
}

fn quad_form_r(l: &[Vec<f64>], c: &[i64]) -> f64 {
    let b = l.len();
    let mut s = 0.0;
    for i in 0..b {
        let mut coord = 0.0;
        for j in i..b {
            coord += l[j][i] * c[j] as f64;
        }
        s += coord * coord;
    }
    s
}

/// The classical Hermite constants gamma_1..gamma_4.
pub fn hermite_constant(b: usize) -> Result<f64, LatticeError> {
    match b {
        1 => Ok(1.0),
        2 => Ok(2.0 / 3.0f64.sqrt()),
        3 => Ok(2.0f64.powf(1.0 / 3.0)),
        4 => Ok(2.0f64.sqrt()),
        _ => Err(LatticeError::UnsupportedRank(b)),
    }
}

/// The hexagonal rank-2 lattice, extremal for the Hermite inequality.
pub fn hexagonal() -> Lattice {
    Lattice::new(vec![vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap()
}

/// The D4 root lattice Gram matrix, extremal in rank 4.
pub fn d4() -> Lattice {
    Lattice::new(vec![
        vec![2.0, -1.0, 0.0, 0.0],
        vec![-1.0, 2.0, -1.0, -1.0],
        vec![0.0, -1.0, 2.0, 0.0],
        vec![0.0, -1.0, 0.0, 2.0],
    ])
    .unwrap()
}

/// A random positive-definite Gram matrix G = A^T A + 0.1 I with A entries
/// uniform in [-1, 1].
pub fn random_lattice<R: Rng>(rank: usize, rng: &mut R) -> Lattice {
    assert!((1..=8).contains(&rank));
    loop {
        let a: Vec<Vec<f64>> = (0..rank)
            .map(|_| (0..rank).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let mut g = vec![vec![0.0; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                for (row, _) in a.iter().enumerate() {
                    g[i][j] += a[row][i] * a[row][j];
                }
                if i == j {
                    g[i][j] += 0.1;
                }
            }
        }
        if let Ok(lat) = Lattice::new(g) {
            return lat;
        }
    }
}

/// Parses the `lattice v1` text format: `rank b` then b rows of b decimals.
pub fn parse_lattice(text: &str) -> Result<Lattice, LatticeError> {
    let mut rank: Option<usize> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line == "lattice v1" {
            continue;
        }
        if let Some(rest) = line.strip_prefix("rank ") {
            rank = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| LatticeError::Parse(format!("bad rank: {rest}")))?,
            );
            continue;
        }
        let row: Result<Vec<f64>, _> = line.split_whitespace().map(str::parse).collect();
        rows.push(row.map_err(|_| LatticeError::Parse(format!("bad Gram row: {line}")))?);
    }
    let rank = rank.ok_or_else(|| LatticeError::Parse("missing rank line".into()))?;
    if rows.len() != rank {
        return Err(LatticeError::Parse(format!(
            "expected {rank} Gram rows, got {}",
            rows.len()
        )));
    }
    Lattice::new(rows)
}
