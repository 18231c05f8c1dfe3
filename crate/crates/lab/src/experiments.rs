//! Experiment runners. Each takes a validated config and returns a sorted
//! [`Table`] plus the assertion-grade checks made along the way.

use std::collections::BTreeMap;
use std::sync::Arc;

use vilenkin::characters::{
    bound_cells_3a, character_function, dirichlet_kernel, verify_bound_cells,
};
use vilenkin::counterexamples::{
    atom_2a, build_2a, build_2b, divergence_2a, divergence_2b, kernel_halfnorm_scan,
    modulus_report_2a, modulus_report_2b, required_resolution_2b,
};
use vilenkin::group::cylinder_cells;
use vilenkin::norms::{hardy_norm, lp_quasinorm, modulus_of_continuity};
use vilenkin::rng::XorShift64Star;
use vilenkin::transform::{analyze, fejer_mean, for_each_fejer_mean, synthesize, MaximalWeight};
use vilenkin::{Complex, GroupPoint, Spectrum64, StepFunction64, VilenkinError, VilenkinStructure};

use crate::config::{Experiment, ExperimentConfig, Params};
use crate::record::{Key, Table};
use crate::LabError;

type Vs = Arc<VilenkinStructure>;

fn c64(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

/// Dispatches on `config.experiment`.
pub fn run(config: &ExperimentConfig, cell_cap: usize) -> Result<Table, LabError> {
    let vs = config.build_structure(cell_cap)?;
    let mut params = config.params();
    let mut table = match config.experiment {
        Experiment::Gram => run_gram(&vs, config.seed, &mut params)?,
        Experiment::Kernels => run_kernels(&vs, &mut params)?,
        Experiment::Convergence => {
            run_convergence(&vs, &config.p_values, config.seed, &mut params)?
        }
        Experiment::Counterexample2a => run_counterexample_2a(&vs, &config.p_values, &mut params)?,
        Experiment::Counterexample2b => run_counterexample_2b(&vs, &mut params)?,
        Experiment::KernelScan => run_kernel_scan(&vs, &mut params)?,
        Experiment::MaximalBound => {
            run_maximal_bound(&vs, &config.p_values, config.seed, &mut params)?
        }
    };
    params.finish()?;
    table.sort();
    Ok(table)
}

fn require_p(p_values: &[f64], experiment: &str) -> Result<(), LabError> {
    if p_values.is_empty() {
        return Err(LabError::Config(format!(
            "{experiment} needs a non-empty p_values list"
        )));
    }
    Ok(())
}

/// Random complex function with entries uniform in the unit square.
pub fn random_function(vs: &Vs, rng: &mut XorShift64Star) -> StepFunction64 {
    StepFunction64::from_fn(vs.clone(), |_| {
        c64(rng.next_signed_unit(), rng.next_signed_unit())
    })
}

/// `1..=top` thinned to about `points` log-spaced values, always keeping
/// `1`, `top` and every `M_k ≤ top`.
pub fn log_grid(vs: &VilenkinStructure, top: usize, points: usize) -> Vec<usize> {
    let mut grid: Vec<usize> = vs
        .big_m_seq()
        .iter()
        .copied()
        .filter(|&m| m <= top)
        .collect();
    grid.push(top.max(1));
    let steps = points.max(2) - 1;
    let span = (top.max(1) as f64).ln();
    for i in 0..=steps {
        let n = (span * i as f64 / steps as f64).exp().round() as usize;
        grid.push(n.clamp(1, top.max(1)));
    }
    grid.sort_unstable();
    grid.dedup();
    grid
}

/// Orthonormality of the characters by direct inner products, and Parseval
/// on seeded random functions.
pub fn run_gram(vs: &Vs, seed: u64, params: &mut Params) -> Result<Table, LabError> {
    let samples = params.usize_or("parseval_samples", 100)?;
    let tolerance = params.f64_or("tolerance", 1e-12)?;
    let parseval_tolerance = params.f64_or("parseval_tolerance", 1e-10)?;
    let limit = params.usize_or("max_cells", 2048)?;
    let cells = vs.cells();
    if cells > limit {
        return Err(LabError::Capacity(format!(
            "the direct Gram matrix is limited to {limit} cells, structure has {cells}"
        )));
    }

    let mut table = Table::new("gram", &["section", "index"], &["error"]);
    let rows: Vec<Vec<Complex<f64>>> = (0..cells)
        .map(|n| character_function::<f64>(n, vs).map(StepFunction64::into_values))
        .collect::<Result<_, _>>()?;
    let inv = 1.0 / cells as f64;
    let mut diag = vec![0.0f64; cells];
    let mut off = vec![0.0f64; cells];
    for i in 0..cells {
        for j in i..cells {
            let inner: Complex<f64> = rows[i]
                .iter()
                .zip(&rows[j])
                .map(|(a, b)| a * b.conj())
                .sum::<Complex<f64>>()
                * inv;
            if i == j {
                diag[i] = (inner - c64(1.0, 0.0)).norm();
            } else {
                let e = inner.norm();
                off[i] = off[i].max(e);
                off[j] = off[j].max(e);
            }
        }
    }
    for n in 0..cells {
        table.push(vec!["diagonal".into(), n.into()], vec![diag[n]]);
        table.push(vec!["off-diagonal".into(), n.into()], vec![off[n]]);
    }
    let gram_max = diag.iter().chain(&off).copied().fold(0.0, f64::max);
    table.assert(
        "gram-identity",
        gram_max < tolerance,
        format!("max |G - I| = {gram_max:e} (tolerance {tolerance:e})"),
    );

    let mut rng = XorShift64Star::new(seed);
    let mut parseval_max = 0.0f64;
    for i in 0..samples {
        let f = random_function(vs, &mut rng);
        let rel = parseval_error(&f);
        parseval_max = parseval_max.max(rel);
        table.push(vec!["parseval".into(), i.into()], vec![rel]);
    }
    table.assert(
        "parseval",
        parseval_max < parseval_tolerance,
        format!("max relative error {parseval_max:e} over {samples} samples (tolerance {parseval_tolerance:e})"),
    );
    Ok(table)
}

/// `|∫|f|² − Σ|f̂|²| / ∫|f|²`
pub fn parseval_error(f: &StepFunction64) -> f64 {
    let cells = f.structure().cells() as f64;
    let energy: f64 = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / cells;
    let spectral = analyze(f).energy();
    if energy == 0.0 {
        spectral
    } else {
        (energy - spectral).abs() / energy
    }
}

/// Either the catalogue of `q_{A−1}|K_{q_{A−1}}|` lower bounds or the
/// `D_{M_j} = M_j 1_{I_j}` identity.
pub fn run_kernels(vs: &Vs, params: &mut Params) -> Result<Table, LabError> {
    let mode = params.str_or("mode", "bounds-3a")?;
    match mode.as_str() {
        "bounds-3a" => kernel_bounds(vs, params),
        "dirichlet-powers" => dirichlet_powers(vs, params),
        other => Err(LabError::Config(format!(
            "unknown kernels mode {other:?} (expected bounds-3a or dirichlet-powers)"
        ))),
    }
}

fn kernel_bounds(vs: &Vs, params: &mut Params) -> Result<Table, LabError> {
    let tolerance = params.f64_or("tolerance", 1e-9)?;
    let n = vs.resolution();
    let a_values = match params.usize_list("a")? {
        Some(list) => list,
        None => (3..).take_while(|a| 2 * a - 1 <= n).collect(),
    };
    if a_values.is_empty() {
        return Err(LabError::Capacity(format!(
            "the lower-bound catalogue starts at A = 3, which needs N ≥ 5 (have N = {n})"
        )));
    }
    let mut table = Table::new(
        "kernels",
        &["a", "k", "s", "low_digit", "high_digit"],
        &["bound", "observed_min", "margin"],
    );
    let mut failures = 0usize;
    let mut total = 0usize;
    for &a in &a_values {
        let catalogue = bound_cells_3a(a, vs)?;
        for check in verify_bound_cells::<f64>(a, &catalogue, vs, tolerance)? {
            let cell = &check.cell;
            total += 1;
            failures += usize::from(!check.holds);
            table.push(
                vec![
                    a.into(),
                    cell.k.into(),
                    cell.s.into(),
                    cell.low_digit.into(),
                    cell.high_digit.into(),
                ],
                vec![
                    cell.bound,
                    check.observed_min,
                    check.observed_min - cell.bound,
                ],
            );
        }
    }
    table.assert(
        "bounds-3a",
        failures == 0,
        format!("{} of {total} catalogued cells hold", total - failures),
    );
    Ok(table)
}

/// `max |D_{M_j} − M_j 1_{I_j}|` for each `j ≤ N`.
pub fn dirichlet_power_error(vs: &Vs, j: usize) -> Result<f64, LabError> {
    let d = dirichlet_kernel::<f64>(vs.big_m(j), vs)?;
    let cyl = cylinder_cells(&GroupPoint::zero(vs), j, vs)?;
    let height = vs.big_m(j) as f64;
    Ok(d.values()
        .iter()
        .enumerate()
        .map(|(cell, v)| (v - c64(if cyl.contains(cell) { height } else { 0.0 }, 0.0)).norm())
        .fold(0.0, f64::max))
}

fn dirichlet_powers(vs: &Vs, params: &mut Params) -> Result<Table, LabError> {
    let tolerance = params.f64_or("tolerance", 1e-12)?;
    let mut table = Table::new("kernels", &["j"], &["error"]);
    let mut worst = 0.0f64;
    for j in 0..=vs.resolution() {
        let e = dirichlet_power_error(vs, j)?;
        worst = worst.max(e);
        table.push(vec![j.into()], vec![e]);
    }
    table.assert(
        "dirichlet-powers",
        worst < tolerance,
        format!("max error {worst:e} (tolerance {tolerance:e})"),
    );
    Ok(table)
}

/// Built-in test functions for the convergence sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Fejér mean `σ_{M_s}` of the indicator of the first third of the cells.
    SmoothedIndicator,
    /// Seeded random coefficients below a band limit.
    CharacterPolynomial,
    /// `f̂(j) = M_i^{1−decay}` on `[M_i, M_{i+1})`.
    FastDecaying2a,
    Constant,
}

impl Family {
    pub fn parse(name: &str) -> Result<Self, LabError> {
        Ok(match name {
            "smoothed-indicator" => Family::SmoothedIndicator,
            "character-polynomial" => Family::CharacterPolynomial,
            "fast-decaying-2a" => Family::FastDecaying2a,
            "constant" => Family::Constant,
            other => {
                return Err(LabError::Config(format!(
                    "unknown test function family {other:?} (expected smoothed-indicator, \
                     character-polynomial, fast-decaying-2a or constant)"
                )))
            }
        })
    }
}

/// Family parameters with their defaults filled in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySettings {
    pub smoothing: usize,
    pub band: usize,
    pub decay: f64,
    pub value: f64,
}

impl FamilySettings {
    pub fn defaults(vs: &VilenkinStructure) -> Self {
        let n = vs.resolution();
        Self {
            smoothing: n.div_ceil(2),
            band: vs.big_m(2.min(n)),
            decay: 2.0,
            value: 1.0,
        }
    }

    fn from_params(vs: &VilenkinStructure, params: &mut Params) -> Result<Self, LabError> {
        let d = Self::defaults(vs);
        Ok(Self {
            smoothing: params.usize_or("smoothing", d.smoothing)?,
            band: params.usize_or("band", d.band)?,
            decay: params.f64_or("decay", d.decay)?,
            value: params.f64_or("value", d.value)?,
        })
    }
}

pub fn family_spectrum(
    family: Family,
    vs: &Vs,
    settings: &FamilySettings,
    seed: u64,
) -> Result<Spectrum64, LabError> {
    let cells = vs.cells();
    Ok(match family {
        Family::SmoothedIndicator => {
            if settings.smoothing > vs.resolution() {
                return Err(VilenkinError::Resolution {
                    required: settings.smoothing,
                    available: vs.resolution(),
                }
                .into());
            }
            let third = cells / 3;
            let g = StepFunction64::from_fn(vs.clone(), |cell| {
                c64(if cell < third { 1.0 } else { 0.0 }, 0.0)
            });
            let s = analyze(&g);
            analyze(&fejer_mean(&s, vs.big_m(settings.smoothing))?)
        }
        Family::CharacterPolynomial => {
            if settings.band == 0 || settings.band > cells {
                return Err(LabError::Config(format!("band must lie in 1..={cells}")));
            }
            let mut rng = XorShift64Star::new(seed);
            Spectrum64::from_fn(vs.clone(), |j| {
                if j < settings.band {
                    c64(rng.next_signed_unit(), rng.next_signed_unit())
                } else {
                    c64(0.0, 0.0)
                }
            })
        }
        Family::FastDecaying2a => {
            let n = vs.resolution();
            Spectrum64::from_fn(vs.clone(), |j| {
                if j == 0 {
                    return c64(0.0, 0.0);
                }
                let i = (0..n).find(|&i| j < vs.big_m(i + 1)).unwrap_or(n - 1);
                c64((vs.big_m(i) as f64).powf(1.0 - settings.decay), 0.0)
            })
        }
        Family::Constant => Spectrum64::delta(vs.clone(), 0)?.weighted(|_| settings.value),
    })
}

/// `1 / (M_{|n|}^{1/p−2} · |n|^{2[1/2+p]})`, with `|n|` the leading digit
/// position of `n` floored at 1.
pub fn convergence_bound(vs: &VilenkinStructure, n: usize, p: f64) -> Result<f64, LabError> {
    let lead = vs.leading_position(n)?;
    let log_power = 2 * (0.5 + p).floor() as i32;
    Ok(1.0 / ((vs.big_m(lead) as f64).powf(1.0 / p - 2.0) * (lead.max(1) as f64).powi(log_power)))
}

pub fn run_convergence(
    vs: &Vs,
    p_values: &[f64],
    seed: u64,
    params: &mut Params,
) -> Result<Table, LabError> {
    require_p(p_values, "convergence")?;
    let family = Family::parse(&params.str_or("family", "character-polynomial")?)?;
    let settings = FamilySettings::from_params(vs, params)?;
    let points = params.usize_or("points", 24)?;
    let s = family_spectrum(family, vs, &settings, seed)?;
    let f = synthesize(&s);
    let grid = log_grid(vs, vs.cells(), points);

    let mut table = Table::new(
        "convergence",
        &["p", "n"],
        &["error", "relative_error", "modulus", "bound"],
    );
    let sigmas: Vec<(usize, StepFunction64)> = grid
        .iter()
        .map(|&n| Ok((n, fejer_mean(&s, n)?.try_sub(&f)?)))
        .collect::<Result<_, VilenkinError>>()?;
    let mut worst_constant = 0.0f64;
    for &p in p_values {
        let norm_f = lp_quasinorm(&f, p)?;
        let mut modulus = BTreeMap::new();
        for (n, diff) in &sigmas {
            let lead = vs.leading_position(*n)?;
            let omega = match modulus.get(&lead) {
                Some(&w) => w,
                None => {
                    let w = modulus_of_continuity(&s, lead, p)?;
                    modulus.insert(lead, w);
                    w
                }
            };
            let error = lp_quasinorm(diff, p)?;
            worst_constant = worst_constant.max(error);
            let relative = if norm_f > 0.0 { error / norm_f } else { 0.0 };
            table.push(
                vec![p.into(), (*n).into()],
                vec![error, relative, omega, convergence_bound(vs, *n, p)?],
            );
        }
    }
    if family == Family::Constant {
        let tol = 1e-12 * settings.value.abs().max(1.0);
        table.assert(
            "constants-reproduced",
            worst_constant <= tol,
            format!("max ‖σ_n c − c‖_p = {worst_constant:e}"),
        );
    }
    Ok(table)
}

pub fn run_counterexample_2a(
    vs: &Vs,
    p_values: &[f64],
    params: &mut Params,
) -> Result<Table, LabError> {
    require_p(p_values, "counterexample-2a")?;
    let n = vs.resolution();
    if n < 2 {
        return Err(VilenkinError::Capacity {
            required_n: 2,
            available_n: n,
        }
        .into());
    }
    let truncation = params.usize_or("truncation", n - 1)?;
    let mut table = Table::new(
        "counterexample-2a",
        &["p", "index"],
        &[
            "modulus",
            "modulus_bound",
            "modulus_ratio",
            "weak_powered",
            "weak_root",
        ],
    );
    for &p in p_values {
        let c = build_2a::<f64>(p, truncation, vs).map_err(|e| match e {
            VilenkinError::Exponent(p) => {
                LabError::Config(format!("counterexample-2a needs 0 < p < 1/2, got {p}"))
            }
            other => other.into(),
        })?;
        let coefficient_error = c.coefficient_law_error();
        table.assert(
            format!("coefficient-law p={p}"),
            coefficient_error < 1e-12,
            format!("max |f̂(j) − M_i| = {coefficient_error:e}"),
        );
        let certificates = c.decomposition.certificates()?;
        let valid = certificates.iter().filter(|c| c.is_valid()).count();
        table.assert(
            format!("atoms p={p}"),
            valid == certificates.len(),
            format!("{valid} of {} atoms certified", certificates.len()),
        );
        let modulus = modulus_report_2a(&c, 0..=n)?;
        for row in modulus {
            let (powered, root) = if row.n < truncation {
                let w = divergence_2a(&c, row.n)?;
                (w.powered, w.root)
            } else {
                (f64::NAN, f64::NAN)
            };
            table.push(
                vec![p.into(), row.n.into()],
                vec![row.omega, row.bound, row.ratio, powered, root],
            );
        }
    }
    Ok(table)
}

fn capacity_2b(truncation: usize, vs: &VilenkinStructure) -> LabError {
    let required = required_resolution_2b(truncation, vs).map_or_else(
        || "more than the structure provides".to_string(),
        |r| r.to_string(),
    );
    LabError::Capacity(format!(
        "counterexample-2b with A = {truncation} needs resolution N = 2M_A+1 = {required}, config has N = {}",
        vs.resolution()
    ))
}

pub fn run_counterexample_2b(vs: &Vs, params: &mut Params) -> Result<Table, LabError> {
    let n = vs.resolution();
    let fitted = (1..=n)
        .take_while(|&a| required_resolution_2b(a, vs).is_some_and(|r| r <= n))
        .last();
    let truncation = match params.opt_usize("truncation")? {
        Some(a) => a,
        None => fitted.ok_or_else(|| capacity_2b(1, vs))?,
    };
    let c = build_2b::<f64>(truncation, vs).map_err(|e| match e {
        VilenkinError::Capacity { .. } | VilenkinError::Resolution { .. } => {
            capacity_2b(truncation, vs)
        }
        other => other.into(),
    })?;

    let mut table = Table::new(
        "counterexample-2b",
        &["index"],
        &[
            "modulus",
            "modulus_bound",
            "modulus_ratio",
            "q",
            "divergence",
        ],
    );
    let coefficient_error = c.coefficient_law_error();
    table.assert(
        "coefficient-law",
        coefficient_error < 1e-12,
        format!("max |f̂(j) − M_{{2M_i}}/M_i²| = {coefficient_error:e}"),
    );
    let certificates = c.decomposition.certificates()?;
    let valid = certificates.iter().filter(|c| c.is_valid()).count();
    table.assert(
        "atoms",
        valid == certificates.len(),
        format!("{valid} of {} atoms certified", certificates.len()),
    );
    for row in modulus_report_2b(&c, 1..=n)? {
        let (q, divergence) = match c.divergence_index(row.n) {
            Ok(q) => (q as f64, divergence_2b(&c, row.n)?),
            Err(VilenkinError::Capacity { .. } | VilenkinError::Resolution { .. }) => {
                (f64::NAN, f64::NAN)
            }
            Err(e) => return Err(e.into()),
        };
        table.push(
            vec![row.n.into()],
            vec![row.omega, row.bound, row.ratio, q, divergence],
        );
    }
    Ok(table)
}

pub fn run_kernel_scan(vs: &Vs, params: &mut Params) -> Result<Table, LabError> {
    let n = vs.resolution();
    let a_min = params.usize_or("a_min", 1)?;
    let a_max = match params.opt_usize("a_max")? {
        Some(a) => a,
        None => n
            .checked_sub(1)
            .map(|m| m / 2)
            .ok_or_else(|| LabError::Capacity("the kernel scan needs N ≥ 1".into()))?,
    };
    if 2 * a_max + 1 > n {
        return Err(VilenkinError::Capacity {
            required_n: 2 * a_max + 1,
            available_n: n,
        }
        .into());
    }
    let mut table = Table::new("kernel-scan", &["a"], &["q", "value", "per_a"]);
    for row in kernel_halfnorm_scan::<f64>(a_min..=a_max, vs)? {
        table.push(
            vec![row.a.into()],
            vec![row.q as f64, row.value, row.per_a.unwrap_or(f64::NAN)],
        );
    }
    Ok(table)
}

/// Per-`n` statistics of `‖σ_n f‖_p / (weight(n) ‖f‖_{H_p})`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalSweep {
    /// `(n, ‖σ_n f‖_p, weight, ratio, running max)` on the requested grid.
    pub rows: Vec<(usize, f64, f64, f64, f64)>,
    pub max_ratio: f64,
    pub argmax: usize,
}

/// Sweeps `n = 1..=n_max`; rows are kept for `n` in `grid`. A zero function
/// has all ratios 0.
pub fn maximal_sweep(
    s: &Spectrum64,
    p: f64,
    n_max: usize,
    grid: &[usize],
) -> Result<MaximalSweep, LabError> {
    let weight = MaximalWeight::new(p)?;
    let hardy = hardy_norm(s, p)?;
    let inv_cells = 1.0 / s.structure().cells() as f64;
    let mut rows = Vec::new();
    let mut max_ratio = 0.0f64;
    let mut argmax = 1;
    let mut next = grid.iter().copied().peekable();
    for_each_fejer_mean(s, n_max, |n, sigma| {
        let power: f64 = sigma.iter().map(|v| v.norm().powf(p)).sum::<f64>() * inv_cells;
        let norm = power.powf(1.0 / p);
        let w = weight.at(n);
        let ratio = if hardy > 0.0 { norm / (w * hardy) } else { 0.0 };
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = n;
        }
        while next.peek().is_some_and(|&g| g < n) {
            next.next();
        }
        if next.peek() == Some(&n) {
            rows.push((n, norm, w, ratio, max_ratio));
        }
    })?;
    Ok(MaximalSweep {
        rows,
        max_ratio,
        argmax,
    })
}

/// The sample family: atoms at every depth, seeded random functions and,
/// for `p < 1/2`, the 2a construction.
pub fn maximal_family(
    vs: &Vs,
    p: f64,
    random_samples: usize,
    seed: u64,
) -> Result<Vec<(String, Spectrum64)>, LabError> {
    let n = vs.resolution();
    let mut family = Vec::new();
    for d in 0..n {
        family.push((format!("atom-{d:02}"), analyze(&atom_2a::<f64>(d, p, vs)?)));
    }
    let mut rng = XorShift64Star::new(seed);
    for i in 0..random_samples {
        family.push((
            format!("random-{i:02}"),
            analyze(&random_function(vs, &mut rng)),
        ));
    }
    if p < 0.5 && n >= 2 {
        family.push((
            "construction-2a".to_string(),
            build_2a::<f64>(p, n - 1, vs)?.spectrum,
        ));
    }
    Ok(family)
}

/// Largest ratio of each family member over `n ≤ n_max`.
pub fn family_max_ratios(
    vs: &Vs,
    p: f64,
    random_samples: usize,
    seed: u64,
    n_max: usize,
) -> Result<Vec<(String, f64)>, LabError> {
    maximal_family(vs, p, random_samples, seed)?
        .into_iter()
        .map(|(name, s)| Ok((name, maximal_sweep(&s, p, n_max, &[])?.max_ratio)))
        .collect()
}

pub fn run_maximal_bound(
    vs: &Vs,
    p_values: &[f64],
    seed: u64,
    params: &mut Params,
) -> Result<Table, LabError> {
    require_p(p_values, "maximal-bound")?;
    let samples = params.usize_or("samples", 4)?;
    let n_max = params.usize_or("n_max", vs.cells())?;
    let points = params.usize_or("points", 24)?;
    if n_max == 0 || n_max > vs.cells() {
        return Err(LabError::Config(format!(
            "n_max must lie in 1..={}",
            vs.cells()
        )));
    }
    let grid = log_grid(vs, n_max, points);
    let mut table = Table::new(
        "maximal-bound",
        &["p", "sample", "n"],
        &["sigma_norm", "weight", "ratio", "running_max"],
    );
    for &p in p_values {
        if p > 0.5 {
            return Err(LabError::Config(format!(
                "maximal-bound needs p ≤ 1/2, got {p}"
            )));
        }
        let mut overall = 0.0f64;
        for (name, s) in maximal_family(vs, p, samples, seed)? {
            let sweep = maximal_sweep(&s, p, n_max, &grid)?;
            overall = overall.max(sweep.max_ratio);
            for (n, norm, w, ratio, running) in sweep.rows {
                table.push(
                    vec![p.into(), Key::from(name.as_str()), n.into()],
                    vec![norm, w, ratio, running],
                );
            }
        }
        table.assert(
            format!("finite-ratio p={p}"),
            overall.is_finite(),
            format!("max ratio {overall:.6}"),
        );
    }
    Ok(table)
}

/// `‖σ_{M_k} f − f‖_p` for `k = 0..=N`.
pub fn dyadic_errors(s: &Spectrum64, p: f64) -> Result<Vec<f64>, LabError> {
    let vs = s.structure();
    let f = synthesize(s);
    (0..=vs.resolution())
        .map(|k| Ok(lp_quasinorm(&fejer_mean(s, vs.big_m(k))?.try_sub(&f)?, p)?))
        .collect()
}
