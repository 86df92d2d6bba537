//! Exact integer primitives on the lattice `Z^2`.
//!
//! A [`LatticeVector`] doubles as a point and as an edge vector. All
//! arithmetic is checked: anything that would leave the `i64` range is
//! reported as [`Error::Overflow`] instead of wrapping.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    pub const ORIGIN: LatticeVector = LatticeVector { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticeVector { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        Ok(LatticeVector {
            x: self.x.checked_add(other.x).ok_or(Error::Overflow("vector addition"))?,
            y: self.y.checked_add(other.y).ok_or(Error::Overflow("vector addition"))?,
        })
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        Ok(LatticeVector {
            x: self.x.checked_sub(other.x).ok_or(Error::Overflow("vector subtraction"))?,
            y: self.y.checked_sub(other.y).ok_or(Error::Overflow("vector subtraction"))?,
        })
    }

    pub fn checked_neg(self) -> Result<Self> {
        self.checked_scale(-1)
    }

    pub fn checked_scale(self, c: i64) -> Result<Self> {
        Ok(LatticeVector {
            x: self.x.checked_mul(c).ok_or(Error::Overflow("vector scaling"))?,
            y: self.y.checked_mul(c).ok_or(Error::Overflow("vector scaling"))?,
        })
    }

    /// `|x| + |y|`, or `None` if it does not fit in a `u64`.
    pub fn l1_norm(self) -> Option<u64> {
        self.x.unsigned_abs().checked_add(self.y.unsigned_abs())
    }

    pub fn chebyshev_norm(self) -> u64 {
        self.x.unsigned_abs().max(self.y.unsigned_abs())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for LatticeVector {
    fn from((x, y): (i64, i64)) -> Self {
        LatticeVector { x, y }
    }
}

/// Twice the signed area of a triangle.
///
/// Positive for a counterclockwise turn, negative for a clockwise one,
/// zero for collinear points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TurnValue(pub i64);

impl TurnValue {
    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_ccw(self) -> bool {
        self.0 > 0
    }

    pub fn is_cw(self) -> bool {
        self.0 < 0
    }

    pub fn is_collinear(self) -> bool {
        self.0 == 0
    }

    pub fn signum(self) -> i64 {
        self.0.signum()
    }

    /// `|turn|`, i.e. twice the unsigned triangle area.
    pub fn doubled_area(self) -> u64 {
        self.0.unsigned_abs()
    }
}

fn cross_i128(ax: i128, ay: i128, bx: i128, by: i128) -> Result<i64> {
    let lhs = ax.checked_mul(by).ok_or(Error::Overflow("turn"))?;
    let rhs = ay.checked_mul(bx).ok_or(Error::Overflow("turn"))?;
    let det = lhs.checked_sub(rhs).ok_or(Error::Overflow("turn"))?;
    i64::try_from(det).map_err(|_| Error::Overflow("turn"))
}

/// Determinant of the homogeneous 3x3 matrix with rows `(p, 1)`, `(q, 1)`, `(r, 1)`.
pub fn turn3(p: LatticeVector, q: LatticeVector, r: LatticeVector) -> Result<TurnValue> {
    let (px, py) = (p.x as i128, p.y as i128);
    cross_i128(q.x as i128 - px, q.y as i128 - py, r.x as i128 - px, r.y as i128 - py).map(TurnValue)
}

/// `turn3(o, p, q) = p.x * q.y - p.y * q.x`.
pub fn turn2(p: LatticeVector, q: LatticeVector) -> Result<TurnValue> {
    cross_i128(p.x as i128, p.y as i128, q.x as i128, q.y as i128).map(TurnValue)
}

/// Number of lattice points strictly inside the segment `pq`.
pub fn segment_lattice_points(p: LatticeVector, q: LatticeVector) -> Result<u64> {
    if p == q {
        return Err(Error::Domain(format!("segment endpoints coincide at {p}")));
    }
    let dx = (q.x as i128 - p.x as i128).unsigned_abs();
    let dy = (q.y as i128 - p.y as i128).unsigned_abs();
    Ok((dx.gcd(&dy) - 1) as u64)
}

/// Default cap on the number of cells of a [`GcdTable`] (256 MiB of `u32`).
pub const DEFAULT_TABLE_BUDGET: usize = 1 << 26;

/// Constant-time `gcd(i, j)` for `0 <= i, j <= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdTable {
    m: usize,
    entries: Vec<u32>,
}

impl GcdTable {
    pub fn new(m: usize) -> Result<Self> {
        Self::with_budget(m, DEFAULT_TABLE_BUDGET)
    }

    /// Fills the table from the identities `gcd(i, i) = i`,
    /// `gcd(0, k) = k` and `gcd(i, j) = gcd(i - j, j)` for `i > j`.
    pub fn with_budget(m: usize, budget: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("gcd table bound must be at least 1".into()));
        }
        let side = m as u128 + 1;
        let cells = side * side;
        if cells > budget as u128 || m > u32::MAX as usize {
            return Err(Error::Capacity { m, cells, budget });
        }
        let side = m + 1;
        let mut entries = vec![0u32; side * side];
        // Row-major order also respects the recurrence: `i > j` reads an
        // earlier row and `i < j` an earlier column of the same row.
        for i in 0..side {
            for j in 0..side {
                let g = if i == 0 {
                    j as u32
                } else if j == 0 || i == j {
                    i as u32
                } else if i > j {
                    entries[(i - j) * side + j]
                } else {
                    entries[i * side + (j - i)]
                };
                entries[i * side + j] = g;
            }
        }
        Ok(GcdTable { m, entries })
    }

    pub fn bound(&self) -> usize {
        self.m
    }

    pub fn gcd(&self, i: u64, j: u64) -> Result<u64> {
        let m = self.m as u64;
        if i > m || j > m {
            return Err(Error::OutOfTable { i, j, m: self.m });
        }
        Ok(self.entries[i as usize * (self.m + 1) + j as usize] as u64)
    }

    /// Whether `v` is visible from the origin, i.e. `gcd(|x|, |y|) = 1`.
    pub fn is_visible(&self, v: LatticeVector) -> Result<bool> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.gcd(v.x.unsigned_abs(), v.y.unsigned_abs())? == 1)
    }
}

pub fn build_gcd_table(m: usize) -> Result<GcdTable> {
    GcdTable::new(m)
}

pub fn gcd_lookup(table: &GcdTable, i: u64, j: u64) -> Result<u64> {
    table.gcd(i, j)
}

pub fn is_visible(v: LatticeVector, table: &GcdTable) -> Result<bool> {
    table.is_visible(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn euclid(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        a
    }

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    #[test]
    fn gcd_table_examples() {
        let t = build_gcd_table(30).unwrap();
        assert_eq!(t.gcd(4, 6).unwrap(), 2);
        assert_eq!(t.gcd(7, 7).unwrap(), 7);
        for k in 1..=30 {
            assert_eq!(t.gcd(1, k).unwrap(), 1);
        }
        assert_eq!(gcd_lookup(&t, 8, 12).unwrap(), 4);
        assert_eq!(gcd_lookup(&t, 0, 5).unwrap(), 5);
        assert_eq!(gcd_lookup(&t, 9, 28).unwrap(), euclid(9, 28));
        assert_eq!(gcd_lookup(&t, 9, 28).unwrap(), 1);
        assert_eq!(t.gcd(0, 0).unwrap(), 0);
    }

    #[test]
    fn gcd_table_matches_euclid_exhaustively() {
        let m = 512;
        let t = build_gcd_table(m).unwrap();
        for i in 0..=m as u64 {
            for j in 0..=m as u64 {
                assert_eq!(t.gcd(i, j).unwrap(), euclid(i, j), "gcd({i}, {j})");
            }
        }
    }

    #[test]
    fn gcd_table_errors() {
        assert!(matches!(build_gcd_table(0), Err(Error::Domain(_))));
        assert!(matches!(GcdTable::with_budget(100, 1000), Err(Error::Capacity { .. })));
        let t = build_gcd_table(10).unwrap();
        assert!(matches!(t.gcd(11, 3), Err(Error::OutOfTable { .. })));
        assert!(matches!(t.gcd(3, 11), Err(Error::OutOfTable { .. })));
    }

    #[test]
    fn visibility() {
        let t = build_gcd_table(10).unwrap();
        assert!(is_visible(v(1, 0), &t).unwrap());
        assert!(!is_visible(v(2, 2), &t).unwrap());
        assert!(is_visible(v(3, 5), &t).unwrap());
        assert!(is_visible(v(-3, 5), &t).unwrap());
        assert!(!is_visible(v(0, -4), &t).unwrap());
        assert_eq!(is_visible(v(0, 0), &t), Err(Error::ZeroVector));
        assert!(matches!(is_visible(v(11, 1), &t), Err(Error::OutOfTable { .. })));
    }

    #[test]
    fn visibility_agrees_with_segment_points() {
        let t = build_gcd_table(40).unwrap();
        for x in -40..=40 {
            for y in -40..=40 {
                let w = v(x, y);
                if w.is_zero() {
                    continue;
                }
                let empty = segment_lattice_points(LatticeVector::ORIGIN, w).unwrap() == 0;
                assert_eq!(t.is_visible(w).unwrap(), empty, "{w}");
            }
        }
    }

    #[test]
    fn turn_examples() {
        let o = LatticeVector::ORIGIN;
        assert_eq!(turn3(o, v(1, 0), v(0, 1)).unwrap(), TurnValue(1));
        assert_eq!(turn3(o, v(2, 2), v(3, 3)).unwrap(), TurnValue(0));
        // 3*3 - 2*6
        assert_eq!(turn3(v(0, 0), v(3, 2), v(6, 3)).unwrap(), TurnValue(-3));
        assert_eq!(turn2(v(1, 1), v(-1, 1)).unwrap(), TurnValue(2));
        assert_eq!(turn2(v(1, 2), v(2, 4)).unwrap(), TurnValue(0));
        assert_eq!(turn2(v(5, 1), v(3, 4)).unwrap(), TurnValue(17));
        let t = turn3(o, v(1, 0), v(0, 1)).unwrap();
        assert!(t.is_ccw() && !t.is_cw() && !t.is_collinear());
        assert_eq!(TurnValue(-6).doubled_area(), 6);
    }

    #[test]
    fn turn_overflow_is_reported() {
        let big = v(i64::MAX, 0);
        let up = v(0, i64::MAX);
        assert_eq!(turn3(v(i64::MIN, i64::MIN), big, up), Err(Error::Overflow("turn")));
        assert_eq!(turn2(big, up), Err(Error::Overflow("turn")));
        assert!(v(i64::MAX, 0).checked_add(v(1, 0)).is_err());
        assert!(v(i64::MIN, 0).checked_neg().is_err());
    }

    #[test]
    fn segment_point_examples() {
        assert_eq!(segment_lattice_points(v(0, 0), v(3, 0)).unwrap(), 2);
        assert_eq!(segment_lattice_points(v(0, 0), v(1, 1)).unwrap(), 0);
        // (2, 3) is the only interior point.
        assert_eq!(segment_lattice_points(v(0, 0), v(4, 6)).unwrap(), 1);
        assert!(matches!(segment_lattice_points(v(1, 1), v(1, 1)), Err(Error::Domain(_))));
    }

    fn coord() -> impl Strategy<Value = i64> {
        -1_000_000i64..1_000_000
    }

    fn point() -> impl Strategy<Value = LatticeVector> {
        (coord(), coord()).prop_map(|(x, y)| v(x, y))
    }

    proptest! {
        #[test]
        fn turn3_is_translation_invariant(p in point(), q in point(), r in point(), d in point()) {
            let moved = |a: LatticeVector| a.checked_add(d).unwrap();
            prop_assert_eq!(turn3(p, q, r).unwrap(), turn3(moved(p), moved(q), moved(r)).unwrap());
        }

        #[test]
        fn turn3_is_antisymmetric(p in point(), q in point(), r in point()) {
            let t = turn3(p, q, r).unwrap().value();
            prop_assert_eq!(turn3(q, p, r).unwrap().value(), -t);
            prop_assert_eq!(turn3(p, r, q).unwrap().value(), -t);
            prop_assert_eq!(turn3(q, r, p).unwrap().value(), t);
        }

        #[test]
        fn turn2_is_turn3_from_origin(p in point(), q in point()) {
            prop_assert_eq!(turn2(p, q).unwrap(), turn3(LatticeVector::ORIGIN, p, q).unwrap());
        }
    }
}
