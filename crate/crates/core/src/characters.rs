//! Rademacher functions, Vilenkin characters, Dirichlet and Fejér kernels,
//! and the lacunary index `q_A` with its catalogue of kernel lower bounds.

use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Result, VilenkinError};
use crate::group::{
    add_points, basis_point, cylinder_cells, Cylinder, GroupPoint, VilenkinStructure,
};
use crate::scalar::{cone, root_of_unity, Scalar};
use crate::transform::{synthesize, Spectrum, StepFunction};

/// Precomputed `m_k`-th roots of unity for every coordinate.
#[derive(Debug, Clone)]
pub struct RootTable<T: Scalar> {
    per_coordinate: Vec<Arc<[Complex<T>]>>,
}

impl<T: Scalar> RootTable<T> {
    pub fn new(vs: &VilenkinStructure) -> Self {
        let mut cache: Vec<(usize, Arc<[Complex<T>]>)> = Vec::new();
        let per_coordinate = vs
            .m_seq()
            .iter()
            .map(|&m| {
                if let Some((_, t)) = cache.iter().find(|(mm, _)| *mm == m) {
                    return t.clone();
                }
                let t: Arc<[Complex<T>]> = (0..m).map(|j| root_of_unity(j, m)).collect();
                cache.push((m, t.clone()));
                t
            })
            .collect();
        Self { per_coordinate }
    }

    pub fn coordinate(&self, k: usize) -> &[Complex<T>] {
        &self.per_coordinate[k]
    }

    /// `exp(2πi e / m_k)`
    pub fn power(&self, k: usize, e: usize) -> Complex<T> {
        let t = &self.per_coordinate[k];
        t[e % t.len()]
    }
}

/// `r_k(x) = exp(2πi x_k / m_k)`
pub fn rademacher<T: Scalar>(
    k: usize,
    x: &GroupPoint,
    vs: &VilenkinStructure,
) -> Result<Complex<T>> {
    if k >= vs.resolution() {
        return Err(VilenkinError::Resolution {
            required: k + 1,
            available: vs.resolution(),
        });
    }
    Ok(root_of_unity(x.digit(k), vs.m(k)))
}

/// `ψ_n(x) = Π_k r_k(x)^{n_k}`
pub fn character<T: Scalar>(
    n: usize,
    x: &GroupPoint,
    vs: &VilenkinStructure,
) -> Result<Complex<T>> {
    let digits = vs.index_to_digits(n)?;
    let mut psi = cone();
    for (k, &d) in digits.iter().enumerate() {
        if d != 0 {
            psi *= root_of_unity::<T>(d * x.digit(k), vs.m(k));
        }
    }
    Ok(psi)
}

/// Writes `ψ_n` on every cell into `out` (length `M_N`).
pub(crate) fn fill_character<T: Scalar>(
    n: usize,
    vs: &VilenkinStructure,
    roots: &RootTable<T>,
    out: &mut [Complex<T>],
) {
    // Coordinate 0 is the most significant in the cell layout, so the row is
    // the Kronecker product of the per-coordinate factors in order.
    let mut len = 1;
    out[0] = cone();
    let mut rest = n;
    for k in 0..vs.resolution() {
        let m = vs.m(k);
        let d = rest % m;
        rest /= m;
        for i in (0..len).rev() {
            let base = out[i];
            for x in (0..m).rev() {
                out[i * m + x] = if d == 0 {
                    base
                } else {
                    base * roots.power(k, d * x)
                };
            }
        }
        len *= m;
    }
}

pub fn character_function<T: Scalar>(
    n: usize,
    vs: &Arc<VilenkinStructure>,
) -> Result<StepFunction<T>> {
    vs.check_index(n)?;
    let roots = RootTable::new(vs);
    let mut f = StepFunction::zeros(vs.clone());
    fill_character(n, vs, &roots, f.values_mut());
    Ok(f)
}

fn check_kernel_index(n: usize, vs: &VilenkinStructure) -> Result<()> {
    if n == 0 {
        return Err(VilenkinError::Undefined(
            "kernels are indexed from 1".into(),
        ));
    }
    if n > vs.cells() {
        return Err(VilenkinError::Resolution {
            required: vs.leading_position(vs.cells()).unwrap_or(0) + 1,
            available: vs.resolution(),
        });
    }
    Ok(())
}

/// `D_n = Σ_{k<n} ψ_k`, for `1 ≤ n ≤ M_N`.
pub fn dirichlet_kernel<T: Scalar>(
    n: usize,
    vs: &Arc<VilenkinStructure>,
) -> Result<StepFunction<T>> {
    check_kernel_index(n, vs)?;
    let s = Spectrum::from_fn(vs.clone(), |j| {
        if j < n {
            cone()
        } else {
            Complex::new(T::zero(), T::zero())
        }
    });
    Ok(synthesize(&s))
}

/// `K_n = (1/n) Σ_{k=1}^n D_k`; coefficient `j` is `(n − j)/n` below `n`.
pub fn fejer_kernel<T: Scalar>(n: usize, vs: &Arc<VilenkinStructure>) -> Result<StepFunction<T>> {
    check_kernel_index(n, vs)?;
    let nn = T::of_usize(n);
    let s = Spectrum::from_fn(vs.clone(), |j| {
        let w = if j < n {
            (nn - T::of_usize(j)) / nn
        } else {
            T::zero()
        };
        Complex::new(w, T::zero())
    });
    Ok(synthesize(&s))
}

/// `q_A = M_{2A} + M_{2A−2} + .. + M_2 + M_0`
pub fn q_index(a: usize, vs: &VilenkinStructure) -> Result<usize> {
    vs.check_depth(2 * a)?;
    Ok((0..=a).map(|i| vs.big_m(2 * i)).sum())
}

/// One entry of the lower-bound catalogue for `q_{A−1} |K_{q_{A−1}}|`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCell {
    pub k: usize,
    pub s: usize,
    /// Multiplier of `e_{2k}`.
    pub low_digit: usize,
    /// Multiplier of `e_{2s}`.
    pub high_digit: usize,
    /// `I_{2s+1}(low·e_{2k} + high·e_{2s})`
    pub cylinder: Cylinder,
    /// `M_{2k} M_{2s} / 4`
    pub bound: f64,
}

/// Enumerates `k = 0..A−3`, `s = k+2..A−1` and the nonzero digit pairs, pairing
/// each cylinder `I_{2s+1}(s_{2k} e_{2k} + s_{2s} e_{2s})` with `M_{2k} M_{2s} / 4`.
/// Empty when `A < 3`.
pub fn bound_cells_3a(a: usize, vs: &VilenkinStructure) -> Result<Vec<BoundCell>> {
    if a < 3 {
        return Ok(Vec::new());
    }
    vs.check_depth(2 * a - 1)?;
    let mut cells = Vec::new();
    for k in 0..=a - 3 {
        for s in k + 2..=a - 1 {
            for low in 1..vs.m(2 * k) {
                for high in 1..vs.m(2 * s) {
                    let x = add_points(
                        &basis_point(2 * k, low, vs)?,
                        &basis_point(2 * s, high, vs)?,
                        vs,
                    )?;
                    cells.push(BoundCell {
                        k,
                        s,
                        low_digit: low,
                        high_digit: high,
                        cylinder: cylinder_cells(&x, 2 * s + 1, vs)?,
                        bound: (vs.big_m(2 * k) * vs.big_m(2 * s)) as f64 / 4.0,
                    });
                }
            }
        }
    }
    Ok(cells)
}

/// Outcome of checking one catalogue entry against the materialized kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub cell: BoundCell,
    /// Smallest `q |K_q|` over the depth-`N` subcells of the cylinder.
    pub observed_min: f64,
    pub holds: bool,
}

/// Checks `q_{A−1} |K_{q_{A−1}}| ≥ bound − tol` on every depth-`N` subcell of
/// every catalogue entry. The catalogue is an argument so other index
/// readings can be checked against the same kernel.
pub fn verify_bound_cells<T: Scalar>(
    a: usize,
    catalogue: &[BoundCell],
    vs: &Arc<VilenkinStructure>,
    tol: f64,
) -> Result<Vec<BoundCheck>> {
    if a == 0 {
        return Err(VilenkinError::Undefined("q_{A-1} needs A ≥ 1".into()));
    }
    let q = q_index(a - 1, vs)?;
    let kernel = fejer_kernel::<T>(q, vs)?;
    let qf = q as f64;
    Ok(catalogue
        .iter()
        .map(|cell| {
            let observed_min = kernel.values()[cell.cylinder.range()]
                .iter()
                .map(|v| qf * v.norm().to_f64_lossy())
                .fold(f64::INFINITY, f64::min);
            BoundCheck {
                cell: cell.clone(),
                observed_min,
                holds: observed_min >= cell.bound - tol,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CellIndex;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn all_points(vs: &VilenkinStructure) -> Vec<GroupPoint> {
        (0..vs.cells())
            .map(|id| {
                GroupPoint::from_cell(
                    CellIndex {
                        id,
                        depth: vs.resolution(),
                    },
                    vs,
                )
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn rademacher_values() {
        let vs = VilenkinStructure::new(vec![2, 3], 2).unwrap();
        let x = GroupPoint::new(vec![1, 1], &vs).unwrap();
        assert_eq!(rademacher::<f64>(0, &x, &vs).unwrap(), c(-1.0));
        let r1 = rademacher::<f64>(1, &x, &vs).unwrap();
        let expected = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((r1 - expected).norm() < 1e-15);
        let zero = GroupPoint::zero(&vs);
        assert_eq!(rademacher::<f64>(1, &zero, &vs).unwrap(), c(1.0));
        assert!(rademacher::<f64>(2, &x, &vs).is_err());
    }

    #[test]
    fn character_values() {
        let vs = VilenkinStructure::new(vec![2, 3, 2, 3], 4).unwrap();
        for x in all_points(&vs) {
            assert_eq!(character::<f64>(0, &x, &vs).unwrap(), c(1.0));
            for k in 0..4 {
                let a = character::<f64>(vs.big_m(k), &x, &vs).unwrap();
                let b = rademacher::<f64>(k, &x, &vs).unwrap();
                assert!((a - b).norm() < 1e-15);
            }
        }
        let w = VilenkinStructure::walsh(3).unwrap();
        let e0 = GroupPoint::new(vec![1, 0, 0], &w).unwrap();
        assert_eq!(character::<f64>(1, &e0, &w).unwrap(), c(-1.0));
    }

    #[test]
    fn characters_are_multiplicative() {
        let vs = VilenkinStructure::new(vec![2, 3, 2, 3], 4).unwrap();
        let pts = all_points(&vs);
        for n in 0..vs.cells() {
            for x in pts.iter().step_by(5) {
                for y in &pts {
                    let lhs = character::<f64>(n, &add_points(x, y, &vs).unwrap(), &vs).unwrap();
                    let rhs =
                        character::<f64>(n, x, &vs).unwrap() * character::<f64>(n, y, &vs).unwrap();
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn character_rows_match_pointwise() {
        let vs = Arc::new(VilenkinStructure::new(vec![3, 2, 4], 3).unwrap());
        let pts = all_points(&vs);
        for n in 0..vs.cells() {
            let row = character_function::<f64>(n, &vs).unwrap();
            for (cell, x) in pts.iter().enumerate() {
                let direct = character::<f64>(n, x, &vs).unwrap();
                assert!((row.value(cell) - direct).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn dirichlet_brute_force() {
        let vs = Arc::new(VilenkinStructure::walsh(3).unwrap());
        let d3 = dirichlet_kernel::<f64>(3, &vs).unwrap();
        let mut expected = StepFunction::zeros(vs.clone());
        for k in 0..3 {
            expected
                .add_scaled(c(1.0), &character_function(k, &vs).unwrap())
                .unwrap();
        }
        assert!(d3.max_abs_diff(&expected).unwrap() < 1e-14);
        let d1 = dirichlet_kernel::<f64>(1, &vs).unwrap();
        assert!(d1.values().iter().all(|v| *v == c(1.0)));
        assert!(dirichlet_kernel::<f64>(0, &vs).is_err());
        assert!(dirichlet_kernel::<f64>(9, &vs).is_err());
    }

    #[test]
    fn dirichlet_closed_form_mixed() {
        let vs = Arc::new(VilenkinStructure::new(vec![2, 3, 2, 3], 4).unwrap());
        let d6 = dirichlet_kernel::<f64>(6, &vs).unwrap();
        let cyl = cylinder_cells(&GroupPoint::zero(&vs), 2, &vs).unwrap();
        for (cell, v) in d6.values().iter().enumerate() {
            let expected = if cyl.contains(cell) { 6.0 } else { 0.0 };
            assert!((v - c(expected)).norm() < 1e-12);
        }
    }

    #[test]
    fn kernel_values_at_origin_and_integrals() {
        let vs = Arc::new(VilenkinStructure::new(vec![2, 3, 2, 3], 4).unwrap());
        for n in 1..=36 {
            let d = dirichlet_kernel::<f64>(n, &vs).unwrap();
            let k = fejer_kernel::<f64>(n, &vs).unwrap();
            assert!((d.value(0) - c(n as f64)).norm() < 1e-12);
            assert!((k.value(0) - c((n + 1) as f64 / 2.0)).norm() < 1e-12);
            assert!((d.integral() - c(1.0)).norm() < 1e-12);
            assert!((k.integral() - c(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn fejer_brute_force() {
        let vs = Arc::new(VilenkinStructure::walsh(4).unwrap());
        let k1 = fejer_kernel::<f64>(1, &vs).unwrap();
        assert!(k1.values().iter().all(|v| *v == c(1.0)));
        assert_eq!(fejer_kernel::<f64>(2, &vs).unwrap().value(0), c(1.5));
        let mut avg = StepFunction::zeros(vs.clone());
        for k in 1..=5 {
            let mut dk = StepFunction::zeros(vs.clone());
            for j in 0..k {
                dk.add_scaled(c(1.0), &character_function(j, &vs).unwrap())
                    .unwrap();
            }
            avg.add_scaled(c(0.2), &dk).unwrap();
        }
        let k5 = fejer_kernel::<f64>(5, &vs).unwrap();
        assert!(k5.max_abs_diff(&avg).unwrap() < 1e-14);
    }

    #[test]
    fn dirichlet_shift_identity() {
        // D_{M_n + j} = D_{M_n} + ψ_{M_n} D_j for j ≤ M_n
        let vs = Arc::new(VilenkinStructure::new(vec![3, 2, 3, 2], 4).unwrap());
        for n in 0..4 {
            let mn = vs.big_m(n);
            let dm = dirichlet_kernel::<f64>(mn, &vs).unwrap();
            let psi = character_function::<f64>(mn, &vs).unwrap();
            for j in 1..=mn {
                let lhs = dirichlet_kernel::<f64>(mn + j, &vs).unwrap();
                let dj = dirichlet_kernel::<f64>(j, &vs).unwrap();
                let rhs = dm
                    .try_add(&psi.zip_with(&dj, |a, b| a * b).unwrap())
                    .unwrap();
                assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn q_indices() {
        let w = VilenkinStructure::walsh(6).unwrap();
        assert_eq!(q_index(3, &w).unwrap(), 85);
        assert_eq!(q_index(0, &w).unwrap(), 1);
        assert!(q_index(4, &w).is_err());
        let vs = VilenkinStructure::new(vec![2, 3, 2, 3], 4).unwrap();
        assert_eq!(q_index(2, &vs).unwrap(), 43);
    }

    #[test]
    fn catalogue_shapes() {
        let w = VilenkinStructure::walsh(7).unwrap();
        let three = bound_cells_3a(3, &w).unwrap();
        assert_eq!(three.len(), 1);
        assert_eq!((three[0].k, three[0].s), (0, 2));
        assert_eq!(three[0].cylinder.depth, 5);
        let x = add_points(
            &basis_point(0, 1, &w).unwrap(),
            &basis_point(4, 1, &w).unwrap(),
            &w,
        )
        .unwrap();
        assert_eq!(three[0].cylinder, cylinder_cells(&x, 5, &w).unwrap());
        assert_eq!(three[0].bound, 4.0);
        assert!(bound_cells_3a(2, &w).unwrap().is_empty());
        let four = bound_cells_3a(4, &w).unwrap();
        let pairs: Vec<_> = four.iter().map(|c| (c.k, c.s, c.bound)).collect();
        // M_0 M_4 / 4, M_0 M_6 / 4, M_2 M_6 / 4
        assert_eq!(pairs, vec![(0, 2, 4.0), (0, 3, 16.0), (1, 3, 64.0)]);
    }

    #[test]
    fn catalogue_counts_digit_pairs() {
        let vs = VilenkinStructure::from_pattern(&[3, 2], 5).unwrap();
        // k = 0, s = 2: (m_0 − 1)(m_4 − 1) = 2 · 2
        assert_eq!(bound_cells_3a(3, &vs).unwrap().len(), 4);
    }

    #[test]
    fn lower_bound_holds_small_walsh() {
        let vs = Arc::new(VilenkinStructure::walsh(7).unwrap());
        for a in 3..=4 {
            let cat = bound_cells_3a(a, &vs).unwrap();
            let checks = verify_bound_cells::<f64>(a, &cat, &vs, 1e-9).unwrap();
            assert!(checks.iter().all(|c| c.holds), "A = {a}: {checks:?}");
        }
    }
}
