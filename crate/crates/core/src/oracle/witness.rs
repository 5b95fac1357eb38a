//! Numerical search for non-degenerate multiple roots.
//!
//! A multiple root of `f₀ = … = f_k = 0` is a point `u ∈ (ℂ*)ⁿ` where all
//! `fᵢ` vanish and the gradients `∇fᵢ(u)` are linearly dependent; it is
//! non-degenerate when every `k` of the gradients are independent. The search
//! runs Gauss–Newton from random starts on
//!
//! ```text
//! fᵢ(u) = 0,   Σᵢ λᵢ ∇fᵢ(u) = 0,   ⟨a, λ⟩ = 1,
//! ```
//!
//! with `a` a random normalization. For fixed coefficients this system is
//! overdetermined by one equation (multiple roots only exist on a
//! hypersurface of coefficients), so generic draws have none. With
//! `free_coefficient` the first coefficient of `f₀` becomes an unknown and the
//! search looks for a nearby coefficient vector that does have one.
//!
//! Acceptance is conservative: residuals below `tol`, every `k`-subset of
//! gradients with smallest singular value at least `rank_tol`, and the same
//! checks again at `tol / 2` after five further iterations.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::{Family, Point};

const MAX_N: usize = 2;
const MAX_K: usize = 2;
const MAX_TERMS: usize = 12;

/// `f_i = Σ_{a ∈ A_i} c_{i,a} xᵃ`, coefficients aligned with the sorted points of `A_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseSystem {
    supports: Family,
    coefficients: Vec<Vec<Complex64>>,
}

impl SparseSystem {
    pub fn new(supports: Family, coefficients: Vec<Vec<Complex64>>) -> Result<Self> {
        if coefficients.len() != supports.len() {
            return Err(Error::invalid("one coefficient list per support is required"));
        }
        for (i, (a, c)) in supports.members().iter().zip(&coefficients).enumerate() {
            if a.len() != c.len() {
                return Err(Error::invalid(alloc::format!(
                    "support {i} has {} points but {} coefficients",
                    a.len(),
                    c.len()
                )));
            }
            if c.iter().any(|x| x.is_zero() || !x.re.is_finite() || !x.im.is_finite()) {
                return Err(Error::invalid(alloc::format!("support {i} has a zero or non-finite coefficient")));
            }
        }
        Ok(SparseSystem {
            supports,
            coefficients,
        })
    }

    /// Builds a system from `(exponent, coefficient)` pairs per polynomial.
    pub fn from_terms(n: usize, polys: Vec<Vec<(Point, Complex64)>>) -> Result<Self> {
        let supports = Family::from_points(n, polys.iter().map(|p| p.iter().map(|t| t.0.clone()).collect()).collect())?;
        let mut coefficients = Vec::new();
        for (a, terms) in supports.members().iter().zip(&polys) {
            if a.len() != terms.len() {
                return Err(Error::invalid("repeated exponent in a polynomial"));
            }
            coefficients.push(
                a.points()
                    .iter()
                    .map(|p| terms.iter().find(|t| &t.0 == p).map(|t| t.1).expect("exponent present"))
                    .collect(),
            );
        }
        Self::new(supports, coefficients)
    }

    /// Coefficients drawn uniformly from `[−1, 1] + [−1, 1]i` (away from 0).
    pub fn random(supports: Family, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coefficients = supports
            .members()
            .iter()
            .map(|a| {
                (0..a.len())
                    .map(|_| loop {
                        let c = Complex64::new(2.0 * uniform(&mut rng) - 1.0, 2.0 * uniform(&mut rng) - 1.0);
                        if c.norm() > 0.1 {
                            break c;
                        }
                    })
                    .collect()
            })
            .collect();
        SparseSystem {
            supports,
            coefficients,
        }
    }

    pub fn supports(&self) -> &Family {
        &self.supports
    }

    pub fn coefficients(&self) -> &[Vec<Complex64>] {
        &self.coefficients
    }

    pub fn n(&self) -> usize {
        self.supports.ambient_dim()
    }

    pub fn k(&self) -> usize {
        self.supports.k()
    }

    pub fn evaluate(&self, u: &[Complex64]) -> Vec<Complex64> {
        (0..self.supports.len()).map(|i| self.local(i, u, None).value).collect()
    }

    /// Ordinary gradients `∇fᵢ(u)`, one per polynomial.
    pub fn gradients(&self, u: &[Complex64]) -> Vec<Vec<Complex64>> {
        (0..self.supports.len()).map(|i| self.local(i, u, None).grad).collect()
    }

    fn local(&self, i: usize, u: &[Complex64], first: Option<Complex64>) -> Local {
        let n = u.len();
        let mut out = Local {
            value: Complex64::zero(),
            grad: vec![Complex64::zero(); n],
            hess: vec![vec![Complex64::zero(); n]; n],
        };
        for (t, (a, &c)) in self.supports.members()[i].points().iter().zip(&self.coefficients[i]).enumerate() {
            let c = if t == 0 { first.unwrap_or(c) } else { c };
            let m = monomial(u, a);
            let cm = c * m;
            out.value += cm;
            for j in 0..n {
                let aj = a[j] as f64;
                out.grad[j] += cm * aj / u[j];
                for l in 0..n {
                    let al = a[l] as f64 - if j == l { 1.0 } else { 0.0 };
                    out.hess[j][l] += cm * aj * al / (u[j] * u[l]);
                }
            }
        }
        out
    }
}

struct Local {
    value: Complex64,
    grad: Vec<Complex64>,
    hess: Vec<Vec<Complex64>>,
}

fn monomial(u: &[Complex64], a: &[i64]) -> Complex64 {
    u.iter().zip(a).fold(Complex64::new(1.0, 0.0), |acc, (&x, &e)| {
        let p = pow(x, e.unsigned_abs());
        if e < 0 {
            acc / p
        } else {
            acc * p
        }
    })
}

fn pow(mut x: Complex64, mut e: u64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= x;
        }
        x *= x;
        e >>= 1;
    }
    acc
}

fn norm(v: &[Complex64]) -> f64 {
    Float::sqrt(v.iter().map(|x| x.norm_sqr()).sum::<f64>())
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessOptions {
    pub samples: usize,
    pub seed: u64,
    pub free_coefficient: bool,
    pub tol: f64,
    pub rank_tol: f64,
    pub max_iterations: usize,
}

impl WitnessOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        WitnessOptions {
            samples,
            seed,
            free_coefficient: false,
            tol: 1e-9,
            rank_tol: 1e-6,
            max_iterations: 60,
        }
    }
}

/// A numerically verified non-degenerate multiple root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootWitness {
    pub u: Vec<Complex64>,
    /// `|fᵢ(u)|`.
    pub residuals: Vec<f64>,
    /// Unit vector `λ` with `Σ λᵢ ∇fᵢ(u) ≈ 0`.
    pub dependence_certificate: Vec<Complex64>,
    pub dependence_residual: f64,
    /// Smallest singular value of the gradients indexed by each `k`-subset.
    pub subrank_checks: Vec<(Vec<usize>, f64)>,
    /// The coefficients the witness is for (differs from the input only in
    /// free-coefficient mode).
    pub coefficients: Vec<Vec<Complex64>>,
}

/// Outcome of [`witness_search`]. An absent witness is probabilistic
/// evidence only.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSearch {
    pub witness: Option<RootWitness>,
    pub samples_run: usize,
    pub seed: u64,
    /// Starts that converged to a multiple root which failed the
    /// non-degeneracy check.
    pub degenerate_hits: usize,
}

pub fn witness_search(s: &SparseSystem, samples: usize, seed: u64) -> Result<WitnessSearch> {
    witness_search_with(s, &WitnessOptions::new(samples, seed))
}

pub fn witness_search_with(s: &SparseSystem, opts: &WitnessOptions) -> Result<WitnessSearch> {
    let (n, k) = (s.n(), s.k());
    let terms: usize = s.supports.members().iter().map(|a| a.len()).sum();
    if n == 0 || n > MAX_N || k > MAX_K || terms > MAX_TERMS {
        return Err(Error::precondition(alloc::format!(
            "witness search is limited to 1 ≤ n ≤ {MAX_N}, k ≤ {MAX_K} and at most {MAX_TERMS} terms"
        )));
    }
    if opts.samples == 0 {
        return Err(Error::precondition("witness search needs at least one sample"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = WitnessSearch {
        witness: None,
        samples_run: 0,
        seed: opts.seed,
        degenerate_hits: 0,
    };
    for _ in 0..opts.samples {
        out.samples_run += 1;
        let mut z = Vec::with_capacity(n + k + 2);
        for _ in 0..n {
            let r = Float::exp(2.0 * uniform(&mut rng) - 1.0);
            let theta = 2.0 * core::f64::consts::PI * uniform(&mut rng);
            z.push(Complex64::from_polar(r, theta));
        }
        for _ in 0..=k {
            z.push(Complex64::new(2.0 * uniform(&mut rng) - 1.0, 2.0 * uniform(&mut rng) - 1.0));
        }
        if opts.free_coefficient {
            z.push(s.coefficients[0][0]);
        }
        let norm: Vec<Complex64> = (0..=k)
            .map(|_| Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI * uniform(&mut rng)))
            .collect();
        let problem = Problem {
            s,
            n,
            k,
            free: opts.free_coefficient,
            norm: &norm,
        };
        if !problem.iterate(&mut z, opts.max_iterations) {
            continue;
        }
        match problem.check(&z, opts.tol, opts.rank_tol) {
            Check::Rejected => continue,
            Check::Degenerate => {
                out.degenerate_hits += 1;
                continue;
            }
            Check::Accepted(_) => {}
        }
        if !problem.iterate(&mut z, 5) {
            continue;
        }
        if let Check::Accepted(w) = problem.check(&z, opts.tol / 2.0, opts.rank_tol) {
            out.witness = Some(w);
            return Ok(out);
        }
    }
    Ok(out)
}

/// Re-evaluates a witness for the given supports: residuals at `u`, the
/// dependence `Σ λᵢ ∇fᵢ(u)` and every `k`-subset of gradients.
pub fn verify_witness(supports: &Family, w: &RootWitness, tol: f64, rank_tol: f64) -> Result<bool> {
    let sys = SparseSystem::new(supports.clone(), w.coefficients.clone())?;
    let (n, k) = (sys.n(), sys.k());
    if w.u.len() != n || w.dependence_certificate.len() != k + 1 {
        return Ok(false);
    }
    if w.u.iter().any(|x| !(x.norm() >= rank_tol)) {
        return Ok(false);
    }
    if sys.evaluate(&w.u).iter().any(|x| !(x.norm() <= tol)) {
        return Ok(false);
    }
    let lnorm = norm(&w.dependence_certificate);
    if !((lnorm - 1.0).abs() <= 1e-6) {
        return Ok(false);
    }
    let grads = sys.gradients(&w.u);
    let combo: Vec<Complex64> =
        (0..n).map(|j| (0..=k).map(|i| w.dependence_certificate[i] * grads[i][j]).sum()).collect();
    if !(norm(&combo) <= tol) {
        return Ok(false);
    }
    Ok((0..=k).all(|skip| {
        let cols: Vec<&Vec<Complex64>> = (0..=k).filter(|&i| i != skip).map(|i| &grads[i]).collect();
        cols.is_empty() || smallest_singular_value(&cols) >= rank_tol
    }))
}

struct Problem<'a> {
    s: &'a SparseSystem,
    n: usize,
    k: usize,
    free: bool,
    norm: &'a [Complex64],
}

enum Check {
    Accepted(RootWitness),
    /// A multiple root, but some `k` gradients are dependent.
    Degenerate,
    Rejected,
}

impl Problem<'_> {
    fn first(&self, z: &[Complex64]) -> Option<Complex64> {
        self.free.then(|| z[self.n + self.k + 1])
    }

    /// Residual vector and Jacobian of the bordered system at `z`.
    fn system(&self, z: &[Complex64]) -> (Vec<Complex64>, Vec<Vec<Complex64>>) {
        let (n, k) = (self.n, self.k);
        let u = &z[..n];
        let lambda = &z[n..=n + k];
        let p = z.len();
        let locals: Vec<Local> = (0..=k)
            .map(|i| self.s.local(i, u, if i == 0 { self.first(z) } else { None }))
            .collect();
        let mut f = Vec::with_capacity(n + k + 2);
        let mut jac = Vec::with_capacity(n + k + 2);
        let lead = &self.s.supports.members()[0].points()[0];
        let lead_m = monomial(u, lead);
        for (i, loc) in locals.iter().enumerate() {
            f.push(loc.value);
            let mut row = vec![Complex64::zero(); p];
            row[..n].copy_from_slice(&loc.grad);
            if self.free && i == 0 {
                row[p - 1] = lead_m;
            }
            jac.push(row);
        }
        for j in 0..n {
            let mut g = Complex64::zero();
            let mut row = vec![Complex64::zero(); p];
            for (i, loc) in locals.iter().enumerate() {
                g += lambda[i] * loc.grad[j];
                for l in 0..n {
                    row[l] += lambda[i] * loc.hess[j][l];
                }
                row[n + i] = loc.grad[j];
            }
            if self.free {
                row[p - 1] = lambda[0] * lead_m * (lead[j] as f64) / u[j];
            }
            f.push(g);
            jac.push(row);
        }
        let mut h = Complex64::new(-1.0, 0.0);
        let mut row = vec![Complex64::zero(); p];
        for i in 0..=k {
            h += self.norm[i] * lambda[i];
            row[n + i] = self.norm[i];
        }
        f.push(h);
        jac.push(row);
        (f, jac)
    }

    /// Gauss–Newton steps; `false` if the iterate leaves the torus or blows up.
    fn iterate(&self, z: &mut [Complex64], steps: usize) -> bool {
        for _ in 0..steps {
            let (f, jac) = self.system(z);
            let fnorm = norm(&f);
            if !fnorm.is_finite() {
                return false;
            }
            if fnorm < 1e-15 {
                break;
            }
            let Some(step) = least_squares(&jac, &f) else {
                return false;
            };
            let size = norm(&step);
            let znorm = norm(z);
            let scale = if size > 1.0 + znorm { (1.0 + znorm) / size } else { 1.0 };
            for (x, d) in z.iter_mut().zip(&step) {
                *x -= d * scale;
            }
            if z[..self.n].iter().any(|x| !(1e-8..=1e8).contains(&x.norm())) {
                return false;
            }
        }
        true
    }

    fn check(&self, z: &[Complex64], tol: f64, rank_tol: f64) -> Check {
        let (n, k) = (self.n, self.k);
        let u = &z[..n];
        if u.iter().any(|x| x.norm() < rank_tol) {
            return Check::Rejected;
        }
        let mut coefficients = self.s.coefficients.clone();
        if let Some(c) = self.first(z) {
            if c.norm() < rank_tol {
                return Check::Rejected;
            }
            coefficients[0][0] = c;
        }
        let sys = SparseSystem {
            supports: self.s.supports.clone(),
            coefficients,
        };
        let residuals: Vec<f64> = sys.evaluate(u).iter().map(|x| x.norm()).collect();
        if residuals.iter().any(|&r| !(r <= tol)) {
            return Check::Rejected;
        }
        let grads = sys.gradients(u);
        let lambda = &z[n..=n + k];
        let lnorm = norm(lambda);
        let cert: Vec<Complex64> = lambda.iter().map(|x| x / lnorm).collect();
        let combo: Vec<Complex64> = (0..n).map(|j| (0..=k).map(|i| cert[i] * grads[i][j]).sum()).collect();
        let dep = norm(&combo);
        if !(dep <= tol) {
            return Check::Rejected;
        }
        let subrank_checks: Vec<(Vec<usize>, f64)> = (0..=k)
            .map(|skip| {
                let subset: Vec<usize> = (0..=k).filter(|&i| i != skip).collect();
                let cols: Vec<&Vec<Complex64>> = subset.iter().map(|&i| &grads[i]).collect();
                (subset, smallest_singular_value(&cols))
            })
            .filter(|(s, _)| !s.is_empty())
            .collect();
        if subrank_checks.iter().any(|(_, s)| *s < rank_tol) {
            return Check::Degenerate;
        }
        Check::Accepted(RootWitness {
            u: u.to_vec(),
            residuals,
            dependence_certificate: cert,
            dependence_residual: dep,
            subrank_checks,
            coefficients: sys.coefficients,
        })
    }
}

/// Smallest singular value of the matrix with the given columns (at most two).
fn smallest_singular_value(cols: &[&Vec<Complex64>]) -> f64 {
    let dot = |a: &Vec<Complex64>, b: &Vec<Complex64>| -> Complex64 { a.iter().zip(b).map(|(x, y)| x.conj() * y).sum() };
    match cols {
        [] => f64::INFINITY,
        [a] => Float::sqrt(dot(a, a).re),
        [a, b] => {
            if a.len() < 2 {
                return 0.0;
            }
            let (p, q, r) = (dot(a, a).re, dot(b, b).re, dot(a, b).norm());
            let half = 0.5 * (p - q);
            let low = 0.5 * (p + q) - Float::sqrt(half * half + r * r);
            Float::sqrt(low.max(0.0))
        }
        _ => unreachable!("at most two gradients per subset"),
    }
}

/// Solves `min ‖J d − f‖` through lightly damped normal equations.
fn least_squares(jac: &[Vec<Complex64>], f: &[Complex64]) -> Option<Vec<Complex64>> {
    let p = jac[0].len();
    let mut a = vec![vec![Complex64::zero(); p + 1]; p];
    for (row, fi) in jac.iter().zip(f) {
        for i in 0..p {
            let ci = row[i].conj();
            for j in 0..p {
                a[i][j] += ci * row[j];
            }
            a[i][p] += ci * fi;
        }
    }
    let scale = (0..p).map(|i| a[i][i].re).fold(0.0, f64::max).max(1.0);
    for (i, r) in a.iter_mut().enumerate() {
        r[i] += scale * 1e-14;
    }
    for c in 0..p {
        let piv = (c..p).max_by(|&x, &y| a[x][c].norm().total_cmp(&a[y][c].norm()))?;
        if a[piv][c].norm() == 0.0 {
            return None;
        }
        a.swap(c, piv);
        for r in c + 1..p {
            let m = a[r][c] / a[c][c];
            for j in c..=p {
                let t = a[c][j];
                a[r][j] -= m * t;
            }
        }
    }
    let mut x = vec![Complex64::zero(); p];
    for c in (0..p).rev() {
        let mut v = a[c][p];
        for j in c + 1..p {
            v -= a[c][j] * x[j];
        }
        x[c] = v / a[c][c];
    }
    x.iter().all(|v| v.re.is_finite() && v.im.is_finite()).then_some(x)
}
