//! Bounded Vilenkin group arithmetic at a fixed resolution.
//!
//! A [`VilenkinStructure`] fixes the generating sequence `m_0, .., m_{N-1}`
//! and the resolution `N`. Points of the group are truncated to their first
//! `N` coordinates, so the group is modelled by the `M_N` cylinder cells of
//! depth `N`.
//!
//! Two mixed-radix orderings are in play:
//!
//! * character indices `n = Σ n_k M_k` put coordinate 0 in the *least*
//!   significant position (the generalized number system);
//! * cell ids `c = Σ x_k W_k` with `W_k = M_N / M_{k+1}` put coordinate 0 in
//!   the *most* significant position, so every cylinder `I_n(x)` is a
//!   contiguous run of `M_N / M_n` cells.
//!
//! [`VilenkinStructure::cell_of_index`] converts between the two.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Result, VilenkinError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "StructureRepr", into = "StructureRepr")]
pub struct VilenkinStructure {
    m: Vec<usize>,
    /// `big_m[k] = M_k`, length `N + 1`.
    big_m: Vec<usize>,
    lambda: usize,
}

#[derive(Serialize, Deserialize)]
struct StructureRepr {
    m: Vec<usize>,
}

impl TryFrom<StructureRepr> for VilenkinStructure {
    type Error = VilenkinError;

    fn try_from(r: StructureRepr) -> Result<Self> {
        let n = r.m.len();
        VilenkinStructure::new(r.m, n)
    }
}

impl From<VilenkinStructure> for StructureRepr {
    fn from(vs: VilenkinStructure) -> Self {
        StructureRepr { m: vs.m }
    }
}

impl VilenkinStructure {
    /// Builds the structure from the first `resolution` entries of `m`.
    pub fn new(m: Vec<usize>, resolution: usize) -> Result<Self> {
        if m.len() < resolution {
            return Err(VilenkinError::Validation(format!(
                "generating sequence has {} entries, resolution {} requested",
                m.len(),
                resolution
            )));
        }
        let mut m = m;
        m.truncate(resolution);
        if let Some(bad) = m.iter().find(|&&mk| mk < 2) {
            return Err(VilenkinError::Validation(format!(
                "every m_k must be at least 2, found {bad}"
            )));
        }
        let mut big_m = Vec::with_capacity(resolution + 1);
        big_m.push(1usize);
        for &mk in &m {
            let last = *big_m.last().unwrap();
            let next = last.checked_mul(mk).ok_or_else(|| {
                VilenkinError::Validation("M_N overflows the address space".into())
            })?;
            big_m.push(next);
        }
        let lambda = m.iter().copied().max().unwrap_or(2);
        Ok(Self { m, big_m, lambda })
    }

    /// Repeats `pattern` until `resolution` entries are available.
    pub fn from_pattern(pattern: &[usize], resolution: usize) -> Result<Self> {
        if pattern.is_empty() {
            return Err(VilenkinError::Validation("empty pattern".into()));
        }
        let m = pattern.iter().copied().cycle().take(resolution).collect();
        Self::new(m, resolution)
    }

    /// The Walsh-Paley case `m ≡ 2`.
    pub fn walsh(resolution: usize) -> Result<Self> {
        Self::from_pattern(&[2], resolution)
    }

    pub fn resolution(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self, k: usize) -> usize {
        self.m[k]
    }

    pub fn m_seq(&self) -> &[usize] {
        &self.m
    }

    /// `M_k` for `k ≤ N`.
    pub fn big_m(&self, k: usize) -> usize {
        self.big_m[k]
    }

    pub fn big_m_seq(&self) -> &[usize] {
        &self.big_m
    }

    /// Number of depth-`N` cells, `M_N`.
    pub fn cells(&self) -> usize {
        self.big_m[self.resolution()]
    }

    /// `λ = max m_k` over the used entries.
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Stride of coordinate `k` in the cell layout, `M_N / M_{k+1}`.
    pub fn cell_stride(&self, k: usize) -> usize {
        self.cells() / self.big_m[k + 1]
    }

    pub(crate) fn check_depth(&self, depth: usize) -> Result<()> {
        if depth > self.resolution() {
            return Err(VilenkinError::Resolution {
                required: depth,
                available: self.resolution(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_index(&self, n: usize) -> Result<()> {
        if n >= self.cells() {
            return Err(VilenkinError::Range {
                value: n,
                limit: self.cells(),
            });
        }
        Ok(())
    }

    /// Digits of `n` in the generalized number system, length `N`.
    pub fn index_to_digits(&self, n: usize) -> Result<Vec<usize>> {
        self.index_to_digits_len(n, self.resolution())
    }

    /// Digits of `n` truncated to `len ≤ N` positions; requires `n < M_len`.
    pub fn index_to_digits_len(&self, n: usize, len: usize) -> Result<Vec<usize>> {
        self.check_depth(len)?;
        if n >= self.big_m[len] {
            return Err(VilenkinError::Range {
                value: n,
                limit: self.big_m[len],
            });
        }
        let mut rest = n;
        Ok(self.m[..len]
            .iter()
            .map(|&mk| {
                let d = rest % mk;
                rest /= mk;
                d
            })
            .collect())
    }

    pub fn digits_to_index(&self, digits: &[usize]) -> Result<usize> {
        self.check_digits(digits)?;
        Ok(digits.iter().zip(&self.big_m).map(|(&d, &mk)| d * mk).sum())
    }

    fn check_digits(&self, digits: &[usize]) -> Result<()> {
        if digits.len() > self.resolution() {
            return Err(VilenkinError::Validation(format!(
                "{} digits supplied, resolution is {}",
                digits.len(),
                self.resolution()
            )));
        }
        for (k, (&d, &mk)) in digits.iter().zip(&self.m).enumerate() {
            if d >= mk {
                return Err(VilenkinError::Validation(format!(
                    "digit {d} at position {k} not in Z_{mk}"
                )));
            }
        }
        Ok(())
    }

    /// `|n|`: the position of the leading nonzero digit, so that
    /// `M_{|n|} ≤ n < M_{|n|+1}`. Accepts `1 ≤ n ≤ M_N`.
    pub fn leading_position(&self, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(VilenkinError::Undefined(
                "|n| is undefined for n = 0".into(),
            ));
        }
        if n > self.cells() {
            return Err(VilenkinError::Range {
                value: n,
                limit: self.cells() + 1,
            });
        }
        Ok(self.big_m.partition_point(|&mk| mk <= n) - 1)
    }

    /// Cell id holding the same digit vector as character index `n`.
    pub fn cell_of_index(&self, n: usize) -> usize {
        let mut rest = n;
        let mut cell = 0;
        for k in 0..self.resolution() {
            let d = rest % self.m[k];
            rest /= self.m[k];
            cell += d * self.cell_stride(k);
        }
        cell
    }

    /// `table[n] = cell_of_index(n)` for every `n < M_N`.
    pub fn digit_reversal_table(&self) -> Vec<usize> {
        // Grow the table coordinate by coordinate: indices below M_{k+1}
        // are index + digit·M_k, cells are cell + digit·W_k.
        let mut table = Vec::with_capacity(self.cells());
        table.push(0usize);
        for k in 0..self.resolution() {
            let stride = self.cell_stride(k);
            let len = table.len();
            for d in 1..self.m[k] {
                for i in 0..len {
                    let c = table[i] + d * stride;
                    table.push(c);
                }
            }
        }
        table
    }

    pub fn same_as(&self, other: &VilenkinStructure) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

/// A point of `G_m` truncated to its first `N` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupPoint {
    digits: Vec<usize>,
}

impl GroupPoint {
    pub fn new(digits: Vec<usize>, vs: &VilenkinStructure) -> Result<Self> {
        if digits.len() != vs.resolution() {
            return Err(VilenkinError::Validation(format!(
                "point has {} coordinates, resolution is {}",
                digits.len(),
                vs.resolution()
            )));
        }
        vs.check_digits(&digits)?;
        Ok(Self { digits })
    }

    pub fn zero(vs: &VilenkinStructure) -> Self {
        Self {
            digits: vec![0; vs.resolution()],
        }
    }

    pub fn from_cell(cell: CellIndex, vs: &VilenkinStructure) -> Result<Self> {
        vs.check_index(cell.id)?;
        let digits = (0..vs.resolution())
            .map(|k| (cell.id / vs.cell_stride(k)) % vs.m(k))
            .collect();
        Ok(Self { digits })
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn digit(&self, k: usize) -> usize {
        self.digits[k]
    }

    pub fn cell(&self, vs: &VilenkinStructure) -> CellIndex {
        let id = self
            .digits
            .iter()
            .enumerate()
            .map(|(k, &d)| d * vs.cell_stride(k))
            .sum();
        CellIndex {
            id,
            depth: vs.resolution(),
        }
    }

    fn combine(
        &self,
        other: &GroupPoint,
        vs: &VilenkinStructure,
        op: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<GroupPoint> {
        if self.digits.len() != vs.resolution() || other.digits.len() != vs.resolution() {
            return Err(VilenkinError::StructureMismatch);
        }
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .zip(vs.m_seq())
            .map(|((&a, &b), &mk)| op(a, b, mk))
            .collect();
        Ok(GroupPoint { digits })
    }
}

/// A depth-`N` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellIndex {
    pub id: usize,
    pub depth: usize,
}

/// Coordinatewise addition modulo `m_k`, no carries.
pub fn add_points(x: &GroupPoint, y: &GroupPoint, vs: &VilenkinStructure) -> Result<GroupPoint> {
    x.combine(y, vs, |a, b, m| (a + b) % m)
}

pub fn sub_points(x: &GroupPoint, y: &GroupPoint, vs: &VilenkinStructure) -> Result<GroupPoint> {
    x.combine(y, vs, |a, b, m| (a + m - b) % m)
}

/// Cell-id form of `add_points`, used in inner loops.
pub fn add_cells(a: usize, b: usize, vs: &VilenkinStructure) -> usize {
    let mut out = 0;
    for k in 0..vs.resolution() {
        let w = vs.cell_stride(k);
        let m = vs.m(k);
        out += ((a / w % m + b / w % m) % m) * w;
    }
    out
}

pub fn sub_cells(a: usize, b: usize, vs: &VilenkinStructure) -> usize {
    let mut out = 0;
    for k in 0..vs.resolution() {
        let w = vs.cell_stride(k);
        let m = vs.m(k);
        out += ((a / w % m + m - b / w % m) % m) * w;
    }
    out
}

/// The cylinder `I_n(x)` as a contiguous run of depth-`N` cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cylinder {
    pub start: usize,
    pub len: usize,
    pub depth: usize,
}

impl Cylinder {
    pub fn range(&self) -> Range<usize> {
        self.start..self.start + self.len
    }

    /// Haar measure `1 / M_depth`.
    pub fn measure(&self, vs: &VilenkinStructure) -> f64 {
        1.0 / vs.big_m(self.depth) as f64
    }

    pub fn contains(&self, cell: usize) -> bool {
        self.range().contains(&cell)
    }
}

pub fn cylinder_cells(x: &GroupPoint, n: usize, vs: &VilenkinStructure) -> Result<Cylinder> {
    vs.check_depth(n)?;
    if x.digits.len() != vs.resolution() {
        return Err(VilenkinError::StructureMismatch);
    }
    let start = x.digits[..n]
        .iter()
        .enumerate()
        .map(|(k, &d)| d * vs.cell_stride(k))
        .sum();
    Ok(Cylinder {
        start,
        len: vs.cells() / vs.big_m(n),
        depth: n,
    })
}

/// The point `s·e_k`.
pub fn basis_point(k: usize, s: usize, vs: &VilenkinStructure) -> Result<GroupPoint> {
    if k >= vs.resolution() {
        return Err(VilenkinError::Resolution {
            required: k + 1,
            available: vs.resolution(),
        });
    }
    if s == 0 || s >= vs.m(k) {
        return Err(VilenkinError::Validation(format!(
            "multiplier {s} must lie in 1..{}",
            vs.m(k)
        )));
    }
    let mut digits = vec![0; vs.resolution()];
    digits[k] = s;
    Ok(GroupPoint { digits })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs232() -> VilenkinStructure {
        VilenkinStructure::new(vec![2, 3, 2], 3).unwrap()
    }

    #[test]
    fn number_system_table() {
        let vs = VilenkinStructure::new(vec![2, 3, 2, 3], 4).unwrap();
        assert_eq!(vs.big_m_seq(), &[1, 2, 6, 12, 36]);
        assert_eq!(vs.lambda(), 3);
        assert_eq!(vs.cells(), 36);
    }

    #[test]
    fn rejects_small_radix() {
        assert!(VilenkinStructure::new(vec![2, 1], 2).is_err());
        assert!(VilenkinStructure::new(vec![2], 2).is_err());
    }

    #[test]
    fn expansion_examples() {
        let vs = vs232();
        assert_eq!(vs.index_to_digits(7).unwrap(), vec![1, 0, 1]);
        assert_eq!(vs.index_to_digits(0).unwrap(), vec![0, 0, 0]);
        let w = VilenkinStructure::walsh(4).unwrap();
        assert_eq!(w.index_to_digits(13).unwrap(), vec![1, 0, 1, 1]);
        assert!(vs.index_to_digits(12).is_err());
    }

    #[test]
    fn digits_back_to_index() {
        let vs = vs232();
        assert_eq!(vs.digits_to_index(&[1, 0, 1]).unwrap(), 7);
        assert_eq!(vs.digits_to_index(&[0, 0, 0]).unwrap(), 0);
        let w = VilenkinStructure::walsh(3).unwrap();
        assert_eq!(w.digits_to_index(&[1, 1, 1]).unwrap(), 7);
        assert!(vs.digits_to_index(&[0, 3, 0]).is_err());
    }

    #[test]
    fn leading_positions() {
        let w = VilenkinStructure::walsh(4).unwrap();
        assert_eq!(w.leading_position(5).unwrap(), 2);
        assert_eq!(w.leading_position(1).unwrap(), 0);
        assert_eq!(vs232().leading_position(7).unwrap(), 2);
        assert!(matches!(
            w.leading_position(0),
            Err(VilenkinError::Undefined(_))
        ));
    }

    #[test]
    fn point_arithmetic() {
        let vs = VilenkinStructure::new(vec![2, 3], 2).unwrap();
        let x = GroupPoint::new(vec![1, 2], &vs).unwrap();
        assert_eq!(add_points(&x, &x, &vs).unwrap().digits(), &[0, 1]);
        let zero = GroupPoint::zero(&vs);
        assert_eq!(add_points(&x, &zero, &vs).unwrap(), x);
        assert_eq!(sub_points(&x, &x, &vs).unwrap(), zero);
        let other = VilenkinStructure::new(vec![2, 3, 2], 3).unwrap();
        assert!(add_points(&x, &x, &other).is_err());
    }

    #[test]
    fn cylinders() {
        let w = VilenkinStructure::walsh(3).unwrap();
        let zero = GroupPoint::zero(&w);
        let all = cylinder_cells(&zero, 0, &w).unwrap();
        assert_eq!(all.range(), 0..8);
        let half = cylinder_cells(&zero, 1, &w).unwrap();
        assert_eq!(half.range(), 0..4);
        assert_eq!(half.measure(&w), 0.5);
        let x = GroupPoint::new(vec![1, 0, 1], &w).unwrap();
        let single = cylinder_cells(&x, 3, &w).unwrap();
        assert_eq!(single.len, 1);
        assert_eq!(single.start, x.cell(&w).id);
        assert!(cylinder_cells(&x, 4, &w).is_err());
    }

    #[test]
    fn basis_points() {
        let w = VilenkinStructure::walsh(4).unwrap();
        assert_eq!(basis_point(2, 1, &w).unwrap().digits(), &[0, 0, 1, 0]);
        let vs = VilenkinStructure::new(vec![2, 3], 2).unwrap();
        assert_eq!(basis_point(1, 2, &vs).unwrap().digits(), &[0, 2]);
        assert!(basis_point(1, 0, &vs).is_err());
        assert!(basis_point(1, 3, &vs).is_err());
    }

    #[test]
    fn reversal_table_matches_pointwise_map() {
        let vs = VilenkinStructure::new(vec![2, 3, 2, 3], 4).unwrap();
        let table = vs.digit_reversal_table();
        for (n, &c) in table.iter().enumerate() {
            assert_eq!(c, vs.cell_of_index(n));
            let p = GroupPoint::from_cell(CellIndex { id: c, depth: 4 }, &vs).unwrap();
            assert_eq!(vs.digits_to_index(p.digits()).unwrap(), n);
        }
    }

    #[test]
    fn structure_json_form() {
        let vs = vs232();
        let s = serde_json::to_string(&vs).unwrap();
        assert_eq!(s, r#"{"m":[2,3,2]}"#);
        let back: VilenkinStructure = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vs);
        assert!(serde_json::from_str::<VilenkinStructure>(r#"{"m":[2,1]}"#).is_err());
    }
}
