//! Gcd-based classification, cross-checking against the numerical oracle,
//! bounded eventual-sign checks, and grid sweeps.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{companion, mat_mul, DenseMatrix};
use crate::poly::{index_profile, IndexProfile, Polynomial};
use crate::round_sig;
use crate::spectral::{
    spectral_classification_with, Evidence, Method, PerronClass, SpectrumReport, Tolerances,
    Verdict,
};

pub const DEFAULT_K_MAX: u32 = 64;
pub const EVENTUAL_SIGN_MAX_DIM: usize = 12;
pub const MAX_SEARCH_DEGREE: usize = 10;

/// Verdict from the index gcd `d`: `d = 1` spectrally Perron, `d > 1` weakly
/// (with exactly `d` peripheral eigenvalues), `d = 0` neither.
///
/// Only defined for polynomials in nonnegative form; anything else is
/// rejected with [`Error::NotNonnegativeForm`] rather than handed to the
/// numerical oracle.
pub fn classify_by_theorem(p: &Polynomial) -> Result<PerronClass> {
    let profile = index_profile(p);
    if !profile.nonneg_form {
        return Err(Error::NotNonnegativeForm);
    }
    Ok(theorem_class(p, &profile))
}

fn theorem_class(p: &Polynomial, profile: &IndexProfile) -> PerronClass {
    let d = profile.d;
    let verdict = match d {
        0 => Verdict::NotPerron,
        1 => Verdict::SpectrallyPerron,
        _ => Verdict::WeaklySpectrallyPerron,
    };
    let note = if d == 0 {
        Some("nilpotent companion".to_string())
    } else if profile.ell < p.degree() {
        Some(format!("reduced to the irreducible trailing core of size {}", profile.ell))
    } else {
        None
    };
    PerronClass {
        verdict,
        evidence: Evidence {
            method: Method::Theorem,
            d: Some(d),
            peripheral_count: None,
            expected_peripheral: (d > 0).then_some(d),
            rho: None,
            note,
        },
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckReport {
    pub polynomial: Polynomial,
    pub profile: IndexProfile,
    /// Absent when the polynomial is not in nonnegative form.
    pub theorem_verdict: Option<PerronClass>,
    pub numerical_verdict: PerronClass,
    pub spectrum: SpectrumReport,
    pub d: usize,
    /// Peripheral roots; counted on the irreducible core when the theorems apply and `d > 1`.
    pub peripheral_count: usize,
    pub agree: bool,
}

/// The fixed JSON shape of a cross-check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheckRecord {
    pub poly: String,
    pub d: usize,
    pub theorem: Option<String>,
    pub numerical: String,
    pub rho: f64,
    pub peripheral: usize,
    pub agree: bool,
}

impl CrossCheckReport {
    pub fn record(&self) -> CrossCheckRecord {
        CrossCheckRecord {
            poly: self.polynomial.to_string(),
            d: self.d,
            theorem: self.theorem_verdict.as_ref().map(|t| t.verdict.to_string()),
            numerical: self.numerical_verdict.verdict.to_string(),
            rho: round_sig(self.spectrum.rho),
            peripheral: self.peripheral_count,
            agree: self.agree,
        }
    }
}

pub fn cross_check(p: &Polynomial) -> Result<CrossCheckReport> {
    cross_check_with(p, &Tolerances::default())
}

pub fn cross_check_with(p: &Polynomial, tol: &Tolerances) -> Result<CrossCheckReport> {
    let profile = index_profile(p);
    let theorem_verdict = profile.nonneg_form.then(|| theorem_class(p, &profile));
    let (numerical_verdict, spectrum) = spectral_classification_with(p, tol)?;

    let mut peripheral_count = spectrum.peripheral_count;
    let mut agree = true;
    if let Some(theorem) = &theorem_verdict {
        agree = theorem.verdict == numerical_verdict.verdict;
        if profile.d > 1 {
            // the core's characteristic polynomial is p with its zero roots removed
            let core = p.without_zero_roots().expect("d > 0 means a nonzero coefficient");
            let (_, core_spectrum) = spectral_classification_with(&core, tol)?;
            peripheral_count = core_spectrum.peripheral_count;
            agree &= peripheral_count == profile.d;
        }
    }
    Ok(CrossCheckReport {
        polynomial: p.clone(),
        d: profile.d,
        profile,
        theorem_verdict,
        numerical_verdict,
        spectrum,
        peripheral_count,
        agree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignKind {
    Nonneg,
    Positive,
}

impl SignKind {
    fn holds(self, x: f64) -> bool {
        match self {
            SignKind::Nonneg => x >= 0.0,
            SignKind::Positive => x > 0.0,
        }
    }
}

/// An entry of `A^k` violating the sign predicate; indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignWitness {
    pub k: u32,
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventualSignResult {
    pub kind: SignKind,
    pub found_k: Option<u32>,
    pub k_max: u32,
    /// First violating entry (column-major scan) of `A^k_max` when no power qualified.
    pub witness_entry: Option<SignWitness>,
}

impl EventualSignResult {
    /// A hit is a proof; a miss only says no power up to `k_max` qualified.
    pub fn summary(&self) -> String {
        let what = match self.kind {
            SignKind::Nonneg => "nonnegative",
            SignKind::Positive => "positive",
        };
        match (self.found_k, &self.witness_entry) {
            (Some(k), _) => format!("A^{k} is {what}"),
            (None, Some(w)) => format!(
                "no power up to k = {} is {what} (bounded evidence, not a proof); \
                 A^{} has entry ({}, {}) = {}",
                self.k_max, w.k, w.i, w.j, w.value
            ),
            (None, None) => format!("no power up to k = {} is {what}", self.k_max),
        }
    }
}

fn first_violation(m: &DenseMatrix, kind: SignKind) -> Option<(usize, usize)> {
    let n = m.dim();
    (0..n)
        .flat_map(|j| (0..n).map(move |i| (i, j)))
        .find(|&(i, j)| !kind.holds(m[(i, j)]))
}

/// Scans `A, A^2, ..., A^k_max` for the first power satisfying the sign predicate.
///
/// Powers are rescaled by exact powers of two whenever they grow large, which
/// leaves every sign unchanged.
pub fn eventual_sign(a: &DenseMatrix, kind: SignKind, k_max: u32) -> Result<EventualSignResult> {
    scan_powers(a, kind, k_max, false)
}

/// Like [`eventual_sign`], but `found_k` is the smallest `k0` such that every
/// power `A^k0, ..., A^k_max` satisfies the predicate and `k0 <= k_max / 2`,
/// so the streak covers at least the second half of the scanned range. This is
/// the bounded form of "A^k is nonnegative (positive) for all k >= k0".
pub fn eventual_sign_persistent(
    a: &DenseMatrix,
    kind: SignKind,
    k_max: u32,
) -> Result<EventualSignResult> {
    scan_powers(a, kind, k_max, true)
}

fn scan_powers(a: &DenseMatrix, kind: SignKind, k_max: u32, persistent: bool) -> Result<EventualSignResult> {
    if a.dim() > EVENTUAL_SIGN_MAX_DIM {
        return Err(Error::DimensionGuard { dim: a.dim(), max: EVENTUAL_SIGN_MAX_DIM });
    }
    if k_max == 0 {
        return Err(Error::ZeroExponent);
    }
    let mut power = a.clone();
    let mut log2_scale: i32 = 0;
    let mut streak_start = None;
    for k in 1..=k_max {
        if k > 1 {
            power = mat_mul(&power, a)?;
        }
        let big = power.max_abs();
        if big > 2f64.powi(256) && big.is_finite() {
            let e = big.log2().floor() as i32;
            power.scale_in_place(2f64.powi(-e));
            log2_scale += e;
        }
        match first_violation(&power, kind) {
            None if !persistent => {
                return Ok(EventualSignResult { kind, found_k: Some(k), k_max, witness_entry: None })
            }
            None => {
                streak_start.get_or_insert(k);
            }
            Some((i, j)) => {
                streak_start = None;
                if k == k_max {
                    let value = power[(i, j)] * 2f64.powi(log2_scale);
                    return Ok(EventualSignResult {
                        kind,
                        found_k: None,
                        k_max,
                        witness_entry: Some(SignWitness { k, i: i + 1, j: j + 1, value }),
                    });
                }
            }
        }
    }
    let found_k = streak_start.filter(|&k0| k0 <= (k_max / 2).max(1));
    let witness_entry = match found_k {
        Some(_) => None,
        None => first_violation_before(a, kind, streak_start.unwrap_or(k_max))?,
    };
    Ok(EventualSignResult { kind, found_k, k_max, witness_entry })
}

/// Last violating entry below a streak starting at `k0`, recomputed by repeated squaring.
fn first_violation_before(a: &DenseMatrix, kind: SignKind, k0: u32) -> Result<Option<SignWitness>> {
    if k0 <= 1 {
        return Ok(None);
    }
    let k = k0 - 1;
    let power = crate::matrix::mat_power(a, k)?;
    Ok(first_violation(&power, kind).map(|(i, j)| SignWitness { k, i: i + 1, j: j + 1, value: power[(i, j)] }))
}

fn check_grid(degree: usize, grid: &[f64], budget: usize) -> Result<()> {
    if degree == 0 || degree > MAX_SEARCH_DEGREE {
        return Err(Error::InvalidSearch(format!(
            "degree must be in 1..={MAX_SEARCH_DEGREE}, got {degree}"
        )));
    }
    if grid.is_empty() {
        return Err(Error::InvalidSearch("empty grid".into()));
    }
    if let Some(bad) = grid.iter().find(|g| !g.is_finite()) {
        return Err(Error::InvalidSearch(format!("grid value {bad} is not finite")));
    }
    if budget == 0 {
        return Err(Error::InvalidSearch("budget must be positive".into()));
    }
    Ok(())
}

/// Coefficient tuples of length `degree` drawn from `grid`: every tuple in
/// lexicographic order when there are at most `budget` of them, otherwise
/// `budget` uniform draws (duplicates dropped) from a generator seeded with `seed`.
pub fn grid_tuples(degree: usize, grid: &[f64], budget: usize, seed: u64) -> Vec<Vec<f64>> {
    let base = grid.len();
    let total = (0..degree).try_fold(1usize, |acc, _| acc.checked_mul(base));
    match total {
        Some(total) if total <= budget => {
            let mut digits = vec![0usize; degree];
            let mut out = Vec::with_capacity(total);
            for _ in 0..total {
                out.push(digits.iter().map(|&d| grid[d]).collect());
                for pos in (0..degree).rev() {
                    digits[pos] += 1;
                    if digits[pos] < base {
                        break;
                    }
                    digits[pos] = 0;
                }
            }
            out
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for _ in 0..budget {
                let digits: Vec<usize> = (0..degree).map(|_| rng.gen_range(0..base)).collect();
                if seen.insert(digits.clone()) {
                    out.push(digits.iter().map(|&d| grid[d]).collect());
                }
            }
            out
        }
    }
}

/// Cross-checks every nonnegative-form polynomial `t^n - c_1 t^(n-1) - ... - c_n`
/// with each `c_k` from `grid` (all values must be `>= 0`).
pub fn sweep(degree: usize, grid: &[f64], budget: usize, seed: u64) -> Result<Vec<CrossCheckReport>> {
    check_grid(degree, grid, budget)?;
    if let Some(bad) = grid.iter().find(|&&g| g < 0.0) {
        return Err(Error::InvalidSearch(format!("sweep grid value {bad} is negative")));
    }
    grid_tuples(degree, grid, budget, seed)
        .par_iter()
        .map(|c| cross_check(&Polynomial::from_c_values(c)?))
        .collect()
}

/// Monic polynomials with tail coefficients from `grid` that are numerically
/// spectrally Perron but whose companion has no nonnegative power up to
/// [`DEFAULT_K_MAX`].
pub fn search_counterexamples(
    degree: usize,
    grid: &[f64],
    budget: usize,
    seed: u64,
) -> Result<Vec<CrossCheckReport>> {
    search_counterexamples_with(degree, grid, budget, seed, DEFAULT_K_MAX)
}

pub fn search_counterexamples_with(
    degree: usize,
    grid: &[f64],
    budget: usize,
    seed: u64,
    k_max: u32,
) -> Result<Vec<CrossCheckReport>> {
    check_grid(degree, grid, budget)?;
    let found: Vec<Option<CrossCheckReport>> = grid_tuples(degree, grid, budget, seed)
        .par_iter()
        .map(|tail| {
            let p = Polynomial::monic(tail)?;
            let report = cross_check(&p)?;
            if report.numerical_verdict.verdict != Verdict::SpectrallyPerron {
                return Ok(None);
            }
            let sign = eventual_sign(&companion(&p), SignKind::Nonneg, k_max)?;
            Ok(sign.found_k.is_none().then_some(report))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn poly(text: &str) -> Polynomial {
        parse_polynomial(text).unwrap()
    }

    #[test]
    fn theorem_examples() {
        let c = classify_by_theorem(&poly("t^4 - 2t^2 - 3")).unwrap();
        assert_eq!(c.verdict, Verdict::WeaklySpectrallyPerron);
        assert_eq!(c.evidence.expected_peripheral, Some(2));
        assert_eq!(
            classify_by_theorem(&poly("t^3 - t - 1")).unwrap().verdict,
            Verdict::SpectrallyPerron
        );
        let c = classify_by_theorem(&poly("t^5")).unwrap();
        assert_eq!(c.verdict, Verdict::NotPerron);
        assert_eq!(c.evidence.d, Some(0));
        assert_eq!(
            classify_by_theorem(&poly("t^3 - 2t^2 - t + 2")),
            Err(Error::NotNonnegativeForm)
        );
    }

    #[test]
    fn plastic_number_is_strictly_dominant() {
        let (_, r) = crate::spectral::spectral_classification(&poly("t^3 - t - 1")).unwrap();
        assert!((r.perron_root.unwrap() - 1.324_717_957_244_746).abs() < 1e-12);
        assert_eq!(r.peripheral_count, 1);
    }

    #[test]
    fn cross_check_examples() {
        let r = cross_check(&poly("t^3 - 2t^2 - t + 2")).unwrap();
        assert!(r.theorem_verdict.is_none());
        assert_eq!(r.numerical_verdict.verdict, Verdict::SpectrallyPerron);
        assert!(r.agree);

        let r = cross_check(&poly("t^2 - 1")).unwrap();
        assert_eq!(r.d, 2);
        assert_eq!(r.theorem_verdict.unwrap().verdict, Verdict::WeaklySpectrallyPerron);
        assert_eq!(r.numerical_verdict.verdict, Verdict::WeaklySpectrallyPerron);
        assert_eq!(r.peripheral_count, 2);
        assert!(r.agree);

        // c_n = 0 case: roots 0, 0 and +-phi^(1/2), +-i phi^(-1/2)
        let r = cross_check(&poly("t^6 - t^4 - t^2")).unwrap();
        assert_eq!(r.d, 2);
        assert_eq!(r.theorem_verdict.as_ref().unwrap().verdict, Verdict::WeaklySpectrallyPerron);
        assert_eq!(r.numerical_verdict.verdict, Verdict::WeaklySpectrallyPerron);
        assert_eq!(r.peripheral_count, 2);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r.spectrum.rho - phi.sqrt()).abs() < 1e-12);
        assert!(r.agree);
    }

    #[test]
    fn record_shape() {
        let r = cross_check(&poly("t^3 - 2t^2 - t + 2")).unwrap();
        let json = serde_json::to_string(&r.record()).unwrap();
        assert_eq!(
            json,
            r#"{"poly":"t^3 - 2 t^2 - t + 2","d":1,"theorem":null,"numerical":"SpectrallyPerron","rho":2.0,"peripheral":1,"agree":true}"#
        );
    }

    #[test]
    fn eventual_sign_examples() {
        let c = companion(&poly("t^3 - 2t^2 - t + 2"));
        let r = eventual_sign(&c, SignKind::Nonneg, 64).unwrap();
        assert_eq!(r.found_k, None);
        let w = r.witness_entry.unwrap();
        assert_eq!((w.k, w.j), (64, 1));
        assert!(w.value < 0.0);
        assert!(r.summary().contains("not a proof"));

        let ones = DenseMatrix::filled(2, 1.0);
        assert_eq!(eventual_sign(&ones, SignKind::Positive, 64).unwrap().found_k, Some(1));

        let exchange = companion(&poly("t^2 - 1"));
        assert_eq!(eventual_sign(&exchange, SignKind::Nonneg, 64).unwrap().found_k, Some(1));
        let r = eventual_sign(&exchange, SignKind::Positive, 64).unwrap();
        assert_eq!(r.found_k, None);
        assert_eq!(r.witness_entry.unwrap().value, 0.0);

        assert!(eventual_sign(&ones, SignKind::Nonneg, 0).is_err());
        assert!(eventual_sign_persistent(&ones, SignKind::Nonneg, 0).is_err());
        assert!(eventual_sign(&DenseMatrix::identity(13), SignKind::Nonneg, 4).is_err());
    }

    #[test]
    fn persistent_sign_needs_every_later_power() {
        // (-1)^k alternates: a first hit at k = 2 but never persistent
        let minus = DenseMatrix::new(1, vec![-1.0]).unwrap();
        assert_eq!(eventual_sign(&minus, SignKind::Positive, 64).unwrap().found_k, Some(2));
        let r = eventual_sign_persistent(&minus, SignKind::Positive, 63).unwrap();
        assert_eq!(r.found_k, None);
        assert_eq!(r.witness_entry.unwrap().k, 63);
        // a one-power streak at the end of the range is not enough
        let r = eventual_sign_persistent(&minus, SignKind::Positive, 64).unwrap();
        assert_eq!(r.found_k, None);
        assert_eq!(r.witness_entry.unwrap().k, 63);

        // rotation by 90 degrees: C^4 = I
        let rot = companion(&poly("t^2 + 1"));
        assert_eq!(eventual_sign(&rot, SignKind::Nonneg, 64).unwrap().found_k, Some(4));
        assert_eq!(eventual_sign_persistent(&rot, SignKind::Nonneg, 65).unwrap().found_k, None);

        // C^2 = [[1,1],[1,2]] > 0 and stays positive: t^2 - t - 1
        let c = companion(&poly("t^2 - t - 1"));
        assert_eq!(eventual_sign_persistent(&c, SignKind::Positive, 64).unwrap().found_k, Some(2));
        let c = companion(&poly("t^3 - 2t^2 - t + 2"));
        assert_eq!(eventual_sign_persistent(&c, SignKind::Nonneg, 64).unwrap().found_k, None);
    }

    #[test]
    fn eventual_sign_survives_growth() {
        // rho = 10, so 10^300 would overflow without rescaling
        let c = companion(&poly("t^2 - 10 t - 1"));
        let r = eventual_sign(&c, SignKind::Positive, 300).unwrap();
        assert_eq!(r.found_k, Some(2));
        let m = DenseMatrix::from_rows(&[vec![10.0, -1.0], vec![0.0, 10.0]]).unwrap();
        let r = eventual_sign(&m, SignKind::Nonneg, 400).unwrap();
        assert_eq!(r.found_k, None);
        assert!(r.witness_entry.unwrap().value.is_infinite());
    }

    #[test]
    fn grid_tuples_exhaustive_and_sampled() {
        let all = grid_tuples(3, &[0.0, 1.0], 100, 0);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], vec![0.0, 0.0, 0.0]);
        assert_eq!(all[7], vec![1.0, 1.0, 1.0]);
        let a = grid_tuples(8, &[0.0, 1.0, 2.0], 50, 7);
        let b = grid_tuples(8, &[0.0, 1.0, 2.0], 50, 7);
        assert_eq!(a, b);
        assert!(a.len() <= 50 && a.len() > 40);
        assert_ne!(a, grid_tuples(8, &[0.0, 1.0, 2.0], 50, 8));
    }

    #[test]
    fn search_examples() {
        let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let found = search_counterexamples(3, &grid, 1000, 0).unwrap();
        let target = poly("t^3 - 2t^2 - t + 2");
        assert!(found.iter().any(|r| r.polynomial == target));
        assert!(found.iter().all(|r| r.numerical_verdict.verdict == Verdict::SpectrallyPerron));

        // t^2 + t + 1: roots are primitive cube roots of unity
        assert!(search_counterexamples(2, &[1.0], 10, 0).unwrap().is_empty());
        assert!(search_counterexamples(4, &[0.0], 10, 0).unwrap().is_empty());

        assert!(search_counterexamples(11, &grid, 10, 0).is_err());
        assert!(search_counterexamples(3, &[], 10, 0).is_err());
        assert!(search_counterexamples(3, &grid, 0, 0).is_err());
    }

    #[test]
    fn sweep_guards() {
        assert!(sweep(3, &[-1.0, 1.0], 100, 0).is_err());
        let reports = sweep(4, &[0.0, 1.0, 2.0], 1000, 0).unwrap();
        assert_eq!(reports.len(), 81);
        assert!(reports.iter().all(|r| r.agree));
    }
}
