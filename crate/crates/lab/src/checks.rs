//! The numbered invariant suite run by `vilenkin-lab check`.
//!
//! Thresholds live in `fixtures/thresholds.json` and are compiled in.

use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use serde::Deserialize;
use vilenkin::characters::{bound_cells_3a, verify_bound_cells};
use vilenkin::counterexamples::{
    build_2a, build_2b, divergence_2a, divergence_2b, kernel_halfnorm_scan, modulus_report_2a,
    modulus_report_2b,
};
use vilenkin::norms::lp_quasinorm;
use vilenkin::rng::XorShift64Star;
use vilenkin::transform::{
    analyze, analyze_naive, fejer_mean, fejer_spectrum, naive_coefficient, synthesize,
};
use vilenkin::{Complex, Spectrum64, VilenkinStructure};

use crate::experiments::{
    dirichlet_power_error, dyadic_errors, family_max_ratios, family_spectrum, parseval_error,
    random_function, Family, FamilySettings,
};
use crate::LabError;

const THRESHOLDS: &str = include_str!("../fixtures/thresholds.json");

#[derive(Debug, Clone, Deserialize)]
pub struct Thresholds {
    pub orthonormality: Orthonormality,
    pub dirichlet_powers: Tolerance,
    pub fejer_lower_bounds: LowerBounds,
    pub fast_transform: FastTransform,
    pub fejer_algebra: FejerAlgebra,
    pub coefficient_laws: CoefficientLaws,
    pub modulus_bounds: ModulusBounds,
    pub divergence: Divergence,
    pub kernel_growth: KernelGrowth,
    pub dyadic_decay: DyadicDecay,
    pub maximal_ratio: MaximalRatio,
    pub suite: Suite,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Orthonormality {
    pub gram_tolerance: f64,
    pub parseval_tolerance: f64,
    pub parseval_samples: usize,
    pub runtime_seconds: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Tolerance {
    pub tolerance: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct LowerBounds {
    pub a_values: Vec<usize>,
    pub tolerance: f64,
    pub runtime_seconds: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FastTransform {
    pub tolerance: f64,
    pub perf_log2_cells: usize,
    pub min_speedup: f64,
    pub relaxed_min_speedup: f64,
    pub naive_samples: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FejerAlgebra {
    pub cases: usize,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CoefficientLaws {
    pub tolerance: f64,
    pub p_2a: Vec<f64>,
    pub truncation_2a: usize,
    pub truncation_2b: usize,
    pub resolution_2b: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ModulusBounds {
    pub ratio_2a: f64,
    pub n_2a: [usize; 2],
    pub ratio_2b: f64,
    pub n_2b: [usize; 2],
}

#[derive(Debug, Clone, Deserialize)]
pub struct Divergence {
    pub weak_2a: f64,
    pub k_2a: [usize; 2],
    pub half_norm_2b: f64,
    pub k_2b: [usize; 2],
    pub runtime_seconds: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct KernelGrowth {
    pub min_per_a: f64,
    pub a_range: [usize; 2],
}

#[derive(Debug, Clone, Deserialize)]
pub struct DyadicDecay {
    pub final_fraction: f64,
    pub running_min_factor: f64,
    pub p_values: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct MaximalRatio {
    pub max_cv: f64,
    pub seeds: u64,
    pub resolution: usize,
    pub random_samples: usize,
    pub p_values: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Suite {
    pub runtime_seconds: f64,
}

pub fn thresholds() -> &'static Thresholds {
    static CELL: OnceLock<Thresholds> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(THRESHOLDS).expect("threshold fixture parses"))
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CheckOptions {
    /// Use the relaxed speedup threshold for the transform timing gate.
    pub relax_perf: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {}: {} ({:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.seconds
        )
    }
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "orthonormality and Parseval"),
    (2, "Dirichlet kernels at M_j"),
    (3, "Fejér kernel lower bounds"),
    (4, "fast transform"),
    (5, "Fejér algebra"),
    (6, "construction coefficient laws"),
    (7, "atom certificates"),
    (8, "modulus bounds"),
    (9, "divergence statistics"),
    (10, "kernel half-norm growth"),
    (11, "dyadic Fejér decay"),
    (12, "normalized maximal ratio"),
];

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

type Vs = Arc<VilenkinStructure>;

fn structure(m: Vec<usize>) -> Vs {
    let n = m.len();
    Arc::new(VilenkinStructure::new(m, n).expect("fixed test structure"))
}

fn walsh(n: usize) -> Vs {
    Arc::new(VilenkinStructure::walsh(n).expect("fixed test structure"))
}

/// Runs one criterion; errors count as failures.
pub fn run_criterion(id: u8, options: &CheckOptions) -> CriterionResult {
    let title = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown", |(_, t)| *t);
    let start = Instant::now();
    let th = thresholds();
    let outcome = match id {
        1 => orthonormality(th),
        2 => dirichlet_powers(th),
        3 => fejer_lower_bounds(th),
        4 => fast_transform(th, options),
        5 => fejer_algebra(th),
        6 => coefficient_laws(th),
        7 => atom_certificates(th),
        8 => modulus_bounds(th),
        9 => divergence(th),
        10 => kernel_growth(th),
        11 => dyadic_decay(th),
        12 => maximal_ratio(th),
        _ => Err(LabError::Config(format!("no criterion {id}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let budget = match id {
        1 => Some(th.orthonormality.runtime_seconds),
        3 => Some(th.fejer_lower_bounds.runtime_seconds),
        9 => Some(th.divergence.runtime_seconds),
        _ => None,
    };
    let (mut passed, mut detail) = match outcome {
        Ok(v) => (v.passed, v.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = budget {
        if seconds >= limit {
            passed = false;
            let _ = write!(detail, "; runtime {seconds:.2} s over the {limit} s budget");
        }
    }
    CriterionResult {
        id,
        title,
        passed,
        detail,
        seconds,
    }
}

/// Runs the listed criteria in order, calling `report` after each.
pub fn run_suite(
    ids: &[u8],
    options: &CheckOptions,
    mut report: impl FnMut(&CriterionResult),
) -> Vec<CriterionResult> {
    ids.iter()
        .map(|&id| {
            let r = run_criterion(id, options);
            report(&r);
            r
        })
        .collect()
}

fn gram_max_error(vs: &Vs) -> Result<f64, LabError> {
    let rows: Vec<Vec<Complex<f64>>> = (0..vs.cells())
        .map(|n| vilenkin::characters::character_function::<f64>(n, vs).map(|f| f.into_values()))
        .collect::<Result<_, _>>()?;
    let inv = 1.0 / vs.cells() as f64;
    let mut worst = 0.0f64;
    for i in 0..rows.len() {
        for j in i..rows.len() {
            let inner: Complex<f64> = rows[i]
                .iter()
                .zip(&rows[j])
                .map(|(a, b)| a * b.conj())
                .sum::<Complex<f64>>()
                * inv;
            let expected = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner - Complex::new(expected, 0.0)).norm());
        }
    }
    Ok(worst)
}

fn orthonormality(th: &Thresholds) -> Result<Verdict, LabError> {
    let t = &th.orthonormality;
    let mut passed = true;
    let mut detail = String::new();
    for (label, vs) in [
        ("m=(2,3,2,3)", structure(vec![2, 3, 2, 3])),
        ("m≡2 N=10", walsh(10)),
    ] {
        let gram = gram_max_error(&vs)?;
        let mut rng = XorShift64Star::new(1);
        let parseval = (0..t.parseval_samples)
            .map(|_| parseval_error(&random_function(&vs, &mut rng)))
            .fold(0.0, f64::max);
        passed &= gram < t.gram_tolerance && parseval < t.parseval_tolerance;
        let _ = write!(
            detail,
            "{label}: |G−I| {gram:.1e}, Parseval {parseval:.1e}; "
        );
    }
    Ok(verdict(passed, detail.trim_end_matches("; ")))
}

fn dirichlet_powers(th: &Thresholds) -> Result<Verdict, LabError> {
    let mut worst = 0.0f64;
    for vs in [structure(vec![2, 3, 2, 3]), walsh(10)] {
        for j in 0..=vs.resolution() {
            worst = worst.max(dirichlet_power_error(&vs, j)?);
        }
    }
    let tol = th.dirichlet_powers.tolerance;
    Ok(verdict(
        worst < tol,
        format!("max |D_{{M_j}} − M_j 1_{{I_j}}| = {worst:.1e}"),
    ))
}

fn fejer_lower_bounds(th: &Thresholds) -> Result<Verdict, LabError> {
    let t = &th.fejer_lower_bounds;
    let mut passed = true;
    let mut detail = String::new();
    for &a in &t.a_values {
        let vs = walsh(2 * a - 1);
        let catalogue = bound_cells_3a(a, &vs)?;
        let checks = verify_bound_cells::<f64>(a, &catalogue, &vs, t.tolerance)?;
        let held = checks.iter().filter(|c| c.holds).count();
        let slack = checks
            .iter()
            .map(|c| c.observed_min / c.cell.bound)
            .fold(f64::INFINITY, f64::min);
        passed &= held == checks.len() && !checks.is_empty();
        let _ = write!(
            detail,
            "A={a}: {held}/{} cells, min ratio {slack:.3}; ",
            checks.len()
        );
    }
    Ok(verdict(passed, detail.trim_end_matches("; ")))
}

fn fast_transform(th: &Thresholds, options: &CheckOptions) -> Result<Verdict, LabError> {
    let t = &th.fast_transform;
    let mut passed = true;
    let mut detail = String::new();
    let mut rng = XorShift64Star::new(4);
    for vs in [
        structure(vec![2, 3, 2, 3]),
        walsh(10),
        structure(vec![4, 2, 8, 4, 4, 4]),
    ] {
        let f = random_function(&vs, &mut rng);
        let naive = analyze_naive(&f);
        let scale = naive.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
        let rel = analyze(&f).max_abs_diff(&naive)? / scale;
        passed &= rel < t.tolerance;
        let _ = write!(detail, "M={}: rel {rel:.1e}; ", vs.cells());
    }

    let vs = walsh(t.perf_log2_cells);
    let f = random_function(&vs, &mut rng);
    let fast = (0..3)
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(analyze(&f));
            start.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min);
    let cells = vs.cells();
    let samples = t.naive_samples.min(cells);
    let start = Instant::now();
    for i in 0..samples {
        std::hint::black_box(naive_coefficient(
            &f,
            (i * cells) / samples + cells / (2 * samples),
        ));
    }
    let naive = start.elapsed().as_secs_f64() * cells as f64 / samples as f64;
    let speedup = naive / fast;
    let needed = if options.relax_perf {
        t.relaxed_min_speedup
    } else {
        t.min_speedup
    };
    passed &= speedup >= needed;
    let _ = write!(
        detail,
        "M=2^{}: fast {:.2} ms, naive ≈ {:.1} s (from {samples} coefficients), speedup {speedup:.0}× (need {needed}×)",
        t.perf_log2_cells,
        fast * 1e3,
        naive
    );
    Ok(verdict(passed, detail))
}

fn fejer_algebra(th: &Thresholds) -> Result<Verdict, LabError> {
    let t = &th.fejer_algebra;
    let structures = [
        structure(vec![2, 3, 2, 3, 2, 3]),
        walsh(8),
        structure(vec![3, 2, 5, 2]),
    ];
    let mut law = 0.0f64;
    let mut identity = 0.0f64;
    for case in 0..t.cases {
        let vs = &structures[case % structures.len()];
        let mut rng = XorShift64Star::new(1000 + case as u64);
        let cells = vs.cells();

        let s = analyze(&random_function(vs, &mut rng));
        let n = 1 + rng.next_below(cells);
        let sigma = fejer_spectrum(&s, n)?;
        let via_mean = analyze(&fejer_mean(&s, n)?);
        for j in 0..cells {
            let w = if j < n {
                1.0 - j as f64 / n as f64
            } else {
                0.0
            };
            law = law.max((sigma.coeff(j) - s.coeff(j) * w).norm());
            law = law.max((via_mean.coeff(j) - s.coeff(j) * w).norm());
        }

        let n0 = 1 + rng.next_below(vs.resolution() - 1);
        let band = vs.big_m(n0);
        let limited = Spectrum64::from_fn(vs.clone(), |j| {
            if j < band {
                Complex::new(rng.next_signed_unit(), rng.next_signed_unit())
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let f = synthesize(&limited);
        let scale = f.sup_norm().max(1.0);
        let base = fejer_mean(&limited, band)?.try_sub(&f)?;
        let n = band + 1 + rng.next_below(cells - band);
        let lhs = fejer_mean(&limited, n)?.try_sub(&f)?;
        let rhs = base.scale(band as f64 / n as f64);
        identity = identity.max(lhs.max_abs_diff(&rhs)? / scale);
    }
    Ok(verdict(
        law < t.tolerance && identity < t.tolerance,
        format!(
            "{} cases: coefficient law {law:.1e}, band-limited identity {identity:.1e}",
            t.cases
        ),
    ))
}

fn coefficient_laws(th: &Thresholds) -> Result<Verdict, LabError> {
    let t = &th.coefficient_laws;
    let vs = walsh(t.truncation_2a + 1);
    let mut detail = String::new();
    let mut passed = true;
    for &p in &t.p_2a {
        let e = build_2a::<f64>(p, t.truncation_2a, &vs)?.coefficient_law_error();
        passed &= e < t.tolerance;
        let _ = write!(detail, "2a p={p:.4}: {e:.1e}; ");
    }
    let e = build_2b::<f64>(t.truncation_2b, &walsh(t.resolution_2b))?.coefficient_law_error();
    passed &= e < t.tolerance;
    let _ = write!(detail, "2b: {e:.1e}");
    Ok(verdict(passed, detail))
}

fn atom_certificates(th: &Thresholds) -> Result<Verdict, LabError> {
    let t = &th.coefficient_laws;
    let vs = walsh(t.truncation_2a + 1);
    let mut certs = Vec::new();
    for &p in &t.p_2a {
        certs.extend(
            build_2a::<f64>(p, t.truncation_2a, &vs)?
                .decomposition
                .certificates()?,
        );
    }
    certs.extend(
        build_2b::<f64>(t.truncation_2b, &walsh(t.resolution_2b))?
            .decomposition
            .certificates()?,
    );
    let valid = certs.iter().filter(|c| c.is_valid()).count();
    let worst_sup = certs.iter().map(|c| c.sup_bound.value).fold(0.0, f64::max);
    Ok(verdict(
        valid == certs.len(),
        format!(
            "{valid}/{} atoms valid, max ‖a‖_∞ μ(I)^{{1/p}} = {worst_sup:.6}",
            certs.len()
        ),
    ))
}

fn modulus_bounds(th: &Thresholds) -> Result<Verdict, LabError> {
    let t = &th.modulus_bounds;
    let c = &th.coefficient_laws;
    let c2a = build_2a::<f64>(0.25, c.truncation_2a, &walsh(c.truncation_2a + 1))?;
    let rows_2a = modulus_report_2a(&c2a, t.n_2a[0]..=t.n_2a[1])?;
    let c2b = build_2b::<f64>(c.truncation_2b, &walsh(c.resolution_2b))?;
    let rows_2b = modulus_report_2b(&c2b, t.n_2b[0]..=t.n_2b[1])?;
    let max_2a = rows_2a.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let max_2b = rows_2b.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let list = |rows: &[vilenkin::counterexamples::ModulusRow]| {
        rows.iter()
            .map(|r| format!("{:.2}", r.ratio))
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(verdict(
        max_2a <= t.ratio_2a && max_2b <= t.ratio_2b,
        format!(
            "2a ratios [{}] max {max_2a:.3} (limit {}); 2b ratios [{}] max {max_2b:.3} (limit {})",
            list(&rows_2a),
            t.ratio_2a,
            list(&rows_2b),
            t.ratio_2b
        ),
    ))
}

fn divergence(th: &Thresholds) -> Result<Verdict, LabError> {
    let t = &th.divergence;
    let c = &th.coefficient_laws;
    let c2a = build_2a::<f64>(0.25, c.truncation_2a, &walsh(c.truncation_2a + 1))?;
    let mut min_2a = f64::INFINITY;
    let mut roots = Vec::new();
    for k in t.k_2a[0]..=t.k_2a[1] {
        let w = divergence_2a(&c2a, k)?;
        min_2a = min_2a.min(w.powered);
        roots.push(format!("{:.2}", w.root));
    }
    let c2b = build_2b::<f64>(c.truncation_2b, &walsh(c.resolution_2b))?;
    let mut min_2b = f64::INFINITY;
    for k in t.k_2b[0]..=t.k_2b[1] {
        min_2b = min_2b.min(divergence_2b(&c2b, k)?);
    }
    Ok(verdict(
        min_2a >= t.weak_2a && min_2b >= t.half_norm_2b,
        format!(
            "2a weak-L_1/4 min {min_2a:.3} (need {}; root form [{}]); 2b ‖σ_q f − f‖_1/2 min {min_2b:.3} (need {})",
            t.weak_2a,
            roots.join(" "),
            t.half_norm_2b
        ),
    ))
}

fn kernel_growth(th: &Thresholds) -> Result<Verdict, LabError> {
    let t = &th.kernel_growth;
    let vs = walsh(2 * t.a_range[1] + 1);
    let rows = kernel_halfnorm_scan::<f64>(t.a_range[0]..=t.a_range[1], &vs)?;
    let per_a: Vec<f64> = rows.iter().filter_map(|r| r.per_a).collect();
    let min = per_a.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(verdict(
        min >= t.min_per_a && per_a.len() == rows.len(),
        format!(
            "value/A = [{}], min {min:.3} (need {})",
            per_a
                .iter()
                .map(|v| format!("{v:.3}"))
                .collect::<Vec<_>>()
                .join(" "),
            t.min_per_a
        ),
    ))
}

/// `errs[N] ≤ fraction · ‖f‖_p` and `errs[k] ≤ factor · min_{2≤j≤k} errs[j]`.
pub fn decay_holds(errs: &[f64], norm: f64, fraction: f64, factor: f64) -> bool {
    let mut running = f64::INFINITY;
    let mut bounded = true;
    for &e in &errs[2.min(errs.len())..] {
        running = running.min(e);
        bounded &= e <= factor * running;
    }
    bounded && errs.last().is_some_and(|&e| e <= fraction * norm)
}

fn dyadic_decay(th: &Thresholds) -> Result<Verdict, LabError> {
    let t = &th.dyadic_decay;
    let mut passed = true;
    let mut worst_fraction = 0.0f64;
    let mut cases = 0;
    for vs in [walsh(12), structure(vec![2, 3, 2, 3, 2, 3, 2, 3])] {
        for family in [Family::CharacterPolynomial, Family::SmoothedIndicator] {
            let s = family_spectrum(family, &vs, &FamilySettings::defaults(&vs), 11)?;
            let f = synthesize(&s);
            for &p in &t.p_values {
                let errs = dyadic_errors(&s, p)?;
                let norm = lp_quasinorm(&f, p)?;
                passed &= decay_holds(&errs, norm, t.final_fraction, t.running_min_factor);
                worst_fraction = worst_fraction.max(errs[errs.len() - 1] / norm);
                cases += 1;
            }
        }
    }
    Ok(verdict(
        passed,
        format!(
            "{cases} cases, worst ‖σ_{{M_N}} f − f‖_p / ‖f‖_p = {worst_fraction:.2e} (limit {})",
            t.final_fraction
        ),
    ))
}

fn coefficient_of_variation(xs: &[f64]) -> f64 {
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
    var.sqrt() / mean
}

fn maximal_ratio(th: &Thresholds) -> Result<Verdict, LabError> {
    let t = &th.maximal_ratio;
    let vs = walsh(t.resolution);
    let mut passed = true;
    let mut detail = String::new();
    for &p in &t.p_values {
        let mut maxima = Vec::new();
        let mut random_maxima = Vec::new();
        let mut leaders = Vec::new();
        for seed in 1..=t.seeds {
            let members = family_max_ratios(&vs, p, t.random_samples, seed, vs.cells())?;
            let (who, m) = members.iter().fold(("", 0.0f64), |best, (name, r)| {
                if *r > best.1 {
                    (name.as_str(), *r)
                } else {
                    best
                }
            });
            maxima.push(m);
            leaders.push(who.to_string());
            random_maxima.push(
                members
                    .iter()
                    .filter(|(name, _)| name.starts_with("random"))
                    .map(|(_, r)| *r)
                    .fold(0.0, f64::max),
            );
        }
        let mean = maxima.iter().sum::<f64>() / maxima.len() as f64;
        let cv = coefficient_of_variation(&maxima);
        leaders.sort();
        leaders.dedup();
        passed &= maxima.iter().all(|m| m.is_finite()) && cv < t.max_cv;
        let _ = write!(
            detail,
            "p={p}: mean max {mean:.4}, CV {cv:.2e} (attained by {}; random members alone CV {:.2e}); ",
            leaders.join("/"),
            coefficient_of_variation(&random_maxima)
        );
    }
    Ok(verdict(passed, detail.trim_end_matches("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_parses() {
        let th = thresholds();
        assert_eq!(th.modulus_bounds.ratio_2a, 4.0);
        assert_eq!(th.modulus_bounds.ratio_2b, 8.0);
        assert_eq!(th.fast_transform.min_speedup, 20.0);
        assert_eq!(th.fejer_lower_bounds.a_values, vec![3, 4, 5, 6]);
    }

    #[test]
    fn decay_rule() {
        assert!(decay_holds(
            &[9.0, 5.0, 1.0, 0.5, 0.9, 0.04],
            1.0,
            0.05,
            2.0
        ));
        assert!(!decay_holds(
            &[9.0, 5.0, 1.0, 0.3, 0.7, 0.04],
            1.0,
            0.05,
            2.0
        ));
        assert!(!decay_holds(&[9.0, 5.0, 1.0, 0.5, 0.06], 1.0, 0.05, 2.0));
    }

    #[test]
    fn unknown_criterion_fails() {
        let r = run_criterion(99, &CheckOptions::default());
        assert!(!r.passed);
        assert!(r.line().starts_with("[FAIL] criterion 99"));
    }

    #[test]
    fn cheap_criteria_pass() {
        for id in [2, 6, 7] {
            let r = run_criterion(id, &CheckOptions::default());
            assert!(r.passed, "{}", r.line());
        }
    }
}
