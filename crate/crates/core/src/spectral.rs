//! Numerical spectrum of a polynomial and the definitional Perron classification.
//!
//! Roots come from Aberth-Ehrlich simultaneous iteration. The verdict is read
//! directly off the computed roots: a polynomial is spectrally Perron when the
//! spectral radius is attained by exactly one root, and that root is real,
//! positive and simple. It is weakly spectrally Perron when some root of
//! maximal modulus is real, positive and simple, ties allowed.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::digraph::digraph_of;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::poly::Polynomial;
use crate::round_sig;

/// Maximum number of Aberth sweeps.
pub const MAX_SWEEPS: usize = 200;
/// Residual bound `|p(z)| / (1 + |z|^n)` every returned root must meet.
pub const ROOT_RESIDUAL: f64 = 1e-10;
/// Fixed angular offset of the initial guesses (radians); irrational so that
/// no guess starts on a symmetry axis of a real polynomial.
const INITIAL_PHASE: f64 = 0.618_033_988_749_894_9;

pub const POWER_MAX_ITERATIONS: usize = 10_000;
pub const POWER_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Realness test: `|Im z| <= tol_root * (1 + rho)`.
    pub tol_root: f64,
    /// Relative modulus gap below `rho` still counted as peripheral.
    pub tol_peripheral: f64,
    /// Single-linkage cluster radius for multiplicity.
    pub tol_simple: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { tol_root: 1e-8, tol_peripheral: 1e-7, tol_simple: 1e-6 }
    }
}

/// All roots of `p` with multiplicity.
///
/// Exact zero roots (trailing zero coefficients) are split off first; the rest
/// come from Aberth-Ehrlich iteration started on the Cauchy-bound circle
/// `1 + max |a_k|`. Roots are ordered by decreasing modulus, then argument.
pub fn find_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let mut roots = vec![Complex64::new(0.0, 0.0); p.zero_root_multiplicity()];
    if let Some(q) = p.without_zero_roots() {
        let found = aberth(&q)?;
        roots.extend(found);
    }
    let n = p.degree();
    let worst = roots.iter().map(|&z| residual(p, z, n)).fold(0.0, f64::max);
    if worst > ROOT_RESIDUAL {
        return Err(Error::RootsNotConverged { sweeps: MAX_SWEEPS, residual: worst });
    }
    roots.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(a.arg().total_cmp(&b.arg())));
    Ok(roots)
}

fn residual(p: &Polynomial, z: Complex64, n: usize) -> f64 {
    p.eval(z).norm() / (1.0 + z.norm().powi(n as i32))
}

fn aberth(p: &Polynomial) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n == 1 {
        return Ok(vec![Complex64::new(-p.tail()[0], 0.0)]);
    }
    let radius = 1.0 + p.tail().iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let step = std::f64::consts::TAU / n as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, step * k as f64 + INITIAL_PHASE))
        .collect();
    let mut done = vec![false; n];

    for _ in 0..MAX_SWEEPS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (value, deriv) = p.eval_with_derivative(z[i]);
            if value == Complex64::new(0.0, 0.0) {
                done[i] = true;
                continue;
            }
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let denom = deriv / value - repulsion;
            if denom.norm() == 0.0 || !denom.is_finite() {
                continue;
            }
            let correction = denom.inv();
            z[i] -= correction;
            if correction.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
    Ok(z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    SpectrallyPerron,
    WeaklySpectrallyPerron,
    NotPerron,
}

impl Verdict {
    /// True for both Perron verdicts; strict dominance implies the weak form.
    pub fn is_weakly_perron(self) -> bool {
        !matches!(self, Verdict::NotPerron)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SpectrallyPerron => "SpectrallyPerron",
            Verdict::WeaklySpectrallyPerron => "WeaklySpectrallyPerron",
            Verdict::NotPerron => "NotPerron",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Theorem,
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub method: Method,
    pub d: Option<usize>,
    pub peripheral_count: Option<usize>,
    /// Number of peripheral roots the gcd criterion predicts.
    pub expected_peripheral: Option<usize>,
    #[serde(serialize_with = "ser_opt_sig")]
    pub rho: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronClass {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    #[serde(serialize_with = "ser_roots")]
    pub roots: Vec<Complex64>,
    #[serde(serialize_with = "ser_sig")]
    pub rho: f64,
    #[serde(serialize_with = "ser_opt_sig")]
    pub perron_root: Option<f64>,
    pub peripheral_count: usize,
    /// Sizes of the multiplicity clusters containing a peripheral root.
    pub peripheral_clusters: Vec<usize>,
    pub tol_root: f64,
    pub tol_peripheral: f64,
    pub tol_simple: f64,
}

fn ser_sig<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

fn ser_opt_sig<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig(*v)),
        None => s.serialize_none(),
    }
}

fn ser_roots<S: Serializer>(roots: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(roots.iter().map(|z| [round_sig(z.re), round_sig(z.im)]))
}

/// Single-linkage cluster label of every root at radius `tol`.
fn cluster_labels(roots: &[Complex64], tol: f64) -> Vec<usize> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

/// Builds the spectrum report for precomputed roots.
pub fn analyze_roots(roots: Vec<Complex64>, tol: &Tolerances) -> SpectrumReport {
    let rho = roots.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let labels = cluster_labels(&roots, tol.tol_simple);
    let cluster_size = |i: usize| labels.iter().filter(|&&l| l == labels[i]).count();

    let peripheral: Vec<usize> = if rho > 0.0 {
        (0..roots.len())
            .filter(|&i| roots[i].norm() >= (1.0 - tol.tol_peripheral) * rho)
            .collect()
    } else {
        Vec::new()
    };
    let perron_root = peripheral
        .iter()
        .copied()
        .find(|&i| {
            let z = roots[i];
            z.im.abs() <= tol.tol_root * (1.0 + rho) && z.re > 0.0 && cluster_size(i) == 1
        })
        .map(|i| roots[i].re);
    let peripheral_clusters = peripheral.iter().map(|&i| cluster_size(i)).collect();

    SpectrumReport {
        peripheral_count: peripheral.len(),
        peripheral_clusters,
        roots,
        rho,
        perron_root,
        tol_root: tol.tol_root,
        tol_peripheral: tol.tol_peripheral,
        tol_simple: tol.tol_simple,
    }
}

/// Verdict implied by a spectrum report.
pub fn verdict_of(report: &SpectrumReport) -> Verdict {
    match report.perron_root {
        _ if report.rho <= 0.0 => Verdict::NotPerron,
        Some(_) if report.peripheral_count == 1 => Verdict::SpectrallyPerron,
        Some(_) => Verdict::WeaklySpectrallyPerron,
        None => Verdict::NotPerron,
    }
}

pub fn spectral_classification(p: &Polynomial) -> Result<(PerronClass, SpectrumReport)> {
    spectral_classification_with(p, &Tolerances::default())
}

pub fn spectral_classification_with(
    p: &Polynomial,
    tol: &Tolerances,
) -> Result<(PerronClass, SpectrumReport)> {
    let report = analyze_roots(find_roots(p)?, tol);
    let verdict = verdict_of(&report);
    let note = if report.rho <= 0.0 {
        Some("all roots are zero".to_string())
    } else if report.peripheral_clusters.iter().any(|&s| s > 1) {
        Some("a peripheral root lies in a multiplicity cluster".to_string())
    } else {
        None
    };
    let class = PerronClass {
        verdict,
        evidence: Evidence {
            method: Method::Numerical,
            d: None,
            peripheral_count: Some(report.peripheral_count),
            expected_peripheral: None,
            rho: Some(report.rho),
            note,
        },
    };
    Ok((class, report))
}

/// Perron root and eigenvector of a primitive nonnegative matrix by power
/// iteration from the all-ones vector. The vector is normalized to unit max-norm.
pub fn dominant_eigenpair(a: &DenseMatrix) -> Result<(f64, Vec<f64>)> {
    if !a.is_nonnegative() {
        return Err(Error::NegativeEntry);
    }
    let graph = digraph_of(a);
    if !graph.is_strongly_connected() {
        return Err(Error::Reducible);
    }
    if graph.period()? != 1 {
        return Err(Error::Imprimitive);
    }
    let n = a.dim();
    let apply = |v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| a.row(i).iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    };
    let mut v = vec![1.0; n];
    let mut last = f64::INFINITY;
    for _ in 0..POWER_MAX_ITERATIONS {
        let w = apply(&v);
        let rho = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        // v has unit max-norm
        let res = w.iter().zip(&v).fold(0.0f64, |m, (x, y)| m.max((x - rho * y).abs()));
        last = res;
        if res <= POWER_RESIDUAL {
            return Ok((rho, v));
        }
        v = w.iter().map(|x| x / rho).collect();
    }
    Err(Error::PowerIterationNotConverged { iterations: POWER_MAX_ITERATIONS, residual: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::companion;
    use crate::poly::{parse_polynomial, scale_substitution};
    use proptest::prelude::*;

    fn poly(text: &str) -> Polynomial {
        parse_polynomial(text).unwrap()
    }

    fn assert_roots(text: &str, expected: &[Complex64], tol: f64) {
        let roots = find_roots(&poly(text)).unwrap();
        assert_eq!(roots.len(), expected.len());
        let mut used = vec![false; roots.len()];
        for e in expected {
            let k = (0..roots.len())
                .filter(|&k| !used[k])
                .min_by(|&a, &b| (roots[a] - e).norm().total_cmp(&(roots[b] - e).norm()))
                .unwrap();
            assert!((roots[k] - e).norm() <= tol, "{text}: {e} vs {:?}", roots);
            used[k] = true;
        }
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn roots_of_examples() {
        assert_roots("t^3 - 2t^2 - t + 2", &[re(2.0), re(1.0), re(-1.0)], 1e-12);
        assert_roots("t^2 - 1", &[re(1.0), re(-1.0)], 1e-12);
        let s3 = 3f64.sqrt();
        assert_roots(
            "t^4 - 2t^2 - 3",
            &[re(s3), re(-s3), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)],
            1e-12,
        );
        assert_roots("t^3", &[re(0.0); 3], 0.0);
        assert_roots("t - 0.25", &[re(0.25)], 0.0);
    }

    #[test]
    fn double_root_is_found_to_half_precision() {
        // (t - 1)^2 (t + 1)
        assert_roots("t^3 - t^2 - t + 1", &[re(1.0), re(1.0), re(-1.0)], 1e-7);
    }

    #[test]
    fn classification_examples() {
        let (c, r) = spectral_classification(&poly("t^3 - 2t^2 - t + 2")).unwrap();
        assert_eq!(c.verdict, Verdict::SpectrallyPerron);
        assert!((r.rho - 2.0).abs() < 1e-12);
        assert_eq!(r.peripheral_count, 1);
        assert!((r.perron_root.unwrap() - 2.0).abs() < 1e-12);

        let (c, r) = spectral_classification(&poly("t^2 - 1")).unwrap();
        assert_eq!(c.verdict, Verdict::WeaklySpectrallyPerron);
        assert_eq!(r.peripheral_count, 2);

        let (c, r) = spectral_classification(&poly("t^3")).unwrap();
        assert_eq!(c.verdict, Verdict::NotPerron);
        assert_eq!(r.rho, 0.0);
        assert_eq!(r.peripheral_count, 0);

        let (c, r) = spectral_classification(&poly("t^4 - 2t^2 - 3")).unwrap();
        assert_eq!(c.verdict, Verdict::WeaklySpectrallyPerron);
        assert_eq!(r.peripheral_count, 2);
    }

    #[test]
    fn multiple_peripheral_root_is_not_simple() {
        // roots 1, 1, -1
        let (c, r) = spectral_classification(&poly("t^3 - t^2 - t + 1")).unwrap();
        assert_eq!(c.verdict, Verdict::NotPerron);
        assert!(r.peripheral_clusters.contains(&2));
        assert!(c.evidence.note.is_some());
        // complex dominant pair
        let (c, _) = spectral_classification(&poly("t^2 + t + 1")).unwrap();
        assert_eq!(c.verdict, Verdict::NotPerron);
        // negative dominant root
        let (c, _) = spectral_classification(&poly("t^2 + 3t + 2")).unwrap();
        assert_eq!(c.verdict, Verdict::NotPerron);
    }

    #[test]
    fn report_serializes_roots_as_pairs() {
        let (_, r) = spectral_classification(&poly("t^2 - 1")).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["roots"].as_array().unwrap().len(), 2);
        assert_eq!(json["roots"][0].as_array().unwrap().len(), 2);
        assert_eq!(json["rho"], 1.0);
        assert_eq!(json["tol_simple"], 1e-6);
    }

    #[test]
    fn power_iteration_examples() {
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let (rho, v) = dominant_eigenpair(&companion(&poly("t^2 - t - 1"))).unwrap();
        assert!((rho - golden).abs() <= 1e-8);
        assert!((v[1] / v[0] - golden).abs() <= 1e-7);

        let (rho, v) = dominant_eigenpair(&DenseMatrix::filled(2, 1.0)).unwrap();
        assert_eq!(rho, 2.0);
        assert_eq!(v, vec![1.0, 1.0]);

        let (rho, _) = dominant_eigenpair(&DenseMatrix::new(1, vec![3.0]).unwrap()).unwrap();
        assert_eq!(rho, 3.0);
    }

    #[test]
    fn power_iteration_preconditions() {
        let neg = companion(&poly("t^3 - 2t^2 - t + 2"));
        assert_eq!(dominant_eigenpair(&neg), Err(Error::NegativeEntry));
        let red = companion(&poly("t^3 - t"));
        assert_eq!(dominant_eigenpair(&red), Err(Error::Reducible));
        let exchange = companion(&poly("t^2 - 1"));
        assert_eq!(dominant_eigenpair(&exchange), Err(Error::Imprimitive));
    }

    fn tail_strategy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(prop_oneof![1 => Just(0.0), 4 => -4.0..4.0f64], 1..=10)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn residuals_are_small(tail in tail_strategy()) {
            let p = Polynomial::monic(&tail).unwrap();
            let roots = find_roots(&p).unwrap();
            prop_assert_eq!(roots.len(), p.degree());
            let rho = roots.iter().fold(0.0f64, |m, z| m.max(z.norm()));
            let bound = 1e-8 * (1.0 + rho).powi(p.degree() as i32);
            for z in &roots {
                prop_assert!(p.eval(*z).norm() <= bound);
            }
        }

        #[test]
        fn roots_close_under_conjugation(tail in tail_strategy()) {
            let roots = find_roots(&Polynomial::monic(&tail).unwrap()).unwrap();
            for z in &roots {
                let best = roots.iter().map(|w| (w - z.conj()).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(best <= 1e-8 * (1.0 + z.norm()), "{} has no conjugate", z);
            }
        }

        #[test]
        fn scaling_divides_roots(
            roots in prop::collection::vec(-3.0..3.0f64, 1..=6),
            s in prop_oneof![Just(0.5), Just(2.0), Just(10.0)],
        ) {
            // well separated simple roots keep the comparison well conditioned
            let mut sorted = roots.clone();
            sorted.sort_by(f64::total_cmp);
            prop_assume!(sorted.windows(2).all(|w| w[1] - w[0] > 0.2));
            let p = Polynomial::from_real_roots(&roots).unwrap();
            let q = scale_substitution(&p, s).unwrap();
            let rp = find_roots(&p).unwrap();
            let rq = find_roots(&q).unwrap();
            for z in &rp {
                let target = z / s;
                let best = rq.iter().map(|w| (w - target).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(best <= 1e-8 * target.norm().max(1e-3 / s));
            }
            let (cp, _) = spectral_classification(&p).unwrap();
            let (cq, _) = spectral_classification(&q).unwrap();
            prop_assert_eq!(cp.verdict, cq.verdict);
        }
    }
}
