//! Point-set constructions: the linear-time double circle, Jarnik polygons,
//! and the two quadratic-size reference constructions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{GcdTable, LatticeVector};
use crate::sequences::{accumulate, alt, radial_sort_bucket, visible_vectors, VectorSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    HullVertex,
    InnerPoint,
    Unlabeled,
}

/// An ordered list of lattice points, each tagged with its role.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointSet {
    points: Vec<LatticeVector>,
    labels: Vec<Role>,
}

impl PointSet {
    pub fn new(points: Vec<LatticeVector>) -> Self {
        let labels = vec![Role::Unlabeled; points.len()];
        PointSet { points, labels }
    }

    pub fn with_labels(points: Vec<LatticeVector>, labels: Vec<Role>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::Domain(format!("{} points but {} labels", points.len(), labels.len())));
        }
        Ok(PointSet { points, labels })
    }

    pub fn points(&self) -> &[LatticeVector] {
        &self.points
    }

    pub fn labels(&self) -> &[Role] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<LatticeVector> {
        self.points
    }
}

impl From<Vec<LatticeVector>> for PointSet {
    fn from(points: Vec<LatticeVector>) -> Self {
        PointSet::new(points)
    }
}

/// Exact Jarnik polygon statistics for a Chebyshev bound `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JarnikSummary {
    pub q: u64,
    pub vertex_count: u64,
    pub size_s: u64,
}

impl JarnikSummary {
    /// `vertex_count / (24 Q^2 / pi^2)`.
    pub fn vertex_ratio(&self) -> f64 {
        let q = self.q as f64;
        self.vertex_count as f64 / (24.0 * q * q / std::f64::consts::PI.powi(2))
    }

    /// `size_s / (6 Q^3 / pi^2)`.
    pub fn size_ratio(&self) -> f64 {
        let q = self.q as f64;
        self.size_s as f64 / (6.0 * q * q * q / std::f64::consts::PI.powi(2))
    }
}

/// Shifts the set so that its minimum x and minimum y are both zero.
pub fn translate_to_grid(set: &PointSet) -> Result<PointSet> {
    let min_x = set.points.iter().map(|p| p.x).min();
    let min_y = set.points.iter().map(|p| p.y).min();
    let (Some(min_x), Some(min_y)) = (min_x, min_y) else {
        return Err(Error::Domain("cannot translate an empty point set".into()));
    };
    let offset = LatticeVector::new(min_x, min_y);
    let points = set.points.iter().map(|p| p.checked_sub(offset)).collect::<Result<Vec<_>>>()?;
    Ok(PointSet { points, labels: set.labels.clone() })
}

/// The scaled step vectors `3w_1, ..., 3w_2n` of the double circle.
///
/// With `[v'_1, ..., v'_2n] = alt(V)` and the interpolation weight fixed at
/// 1/3, each pair becomes `3w_i = 2v'_i + v'_{i+1}` and
/// `3w_{i+1} = v'_i + 2v'_{i+1}`, so no fractions ever appear.
pub fn double_circle_steps(n: usize) -> Result<VectorSequence> {
    let alternated = alt(&visible_vectors(n)?)?;
    let mut steps = Vec::with_capacity(alternated.len());
    for pair in alternated.as_slice().chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        steps.push(a.checked_scale(2)?.checked_add(b)?);
        steps.push(a.checked_add(b.checked_scale(2)?)?);
    }
    Ok(VectorSequence::new(steps))
}

/// A `2n`-point double circle in `[0, N]^2` with `N = O(n^{3/2})`, built in
/// `O(n)` time. Points come in construction order, untranslated prefix sums
/// of [`double_circle_steps`] shifted onto the grid.
///
/// This is `translate_to_grid(accumulate(double_circle_steps(n)))` fused
/// into one pass that overwrites the sorted vectors with the points, so a
/// large build holds one buffer instead of one per stage. Pair `k` is read
/// in full before positions `2k` and `2k + 1` are written.
pub fn build_double_circle(n: usize) -> Result<PointSet> {
    let mut points = visible_vectors(n)?.into_vec();
    let mut acc = LatticeVector::ORIGIN;
    let (mut min_x, mut min_y) = (0, 0);
    for pair in points.chunks_exact_mut(2) {
        let (a, b) = (pair[1], pair[0]);
        let steps = [a.checked_scale(2)?.checked_add(b)?, a.checked_add(b.checked_scale(2)?)?];
        for (slot, step) in pair.iter_mut().zip(steps) {
            acc = acc.checked_add(step)?;
            min_x = min_x.min(acc.x);
            min_y = min_y.min(acc.y);
            *slot = acc;
        }
    }
    let offset = LatticeVector::new(min_x, min_y);
    for p in &mut points {
        *p = p.checked_sub(offset)?;
    }
    Ok(PointSet::new(points))
}

/// Visible vectors with Chebyshev norm at most `q`, counterclockwise from `(1, 0)`.
pub fn jarnik_vectors(q: u64) -> Result<VectorSequence> {
    if q == 0 {
        return Err(Error::Domain("Jarnik polygon needs Q >= 1".into()));
    }
    let table = GcdTable::new(q as usize)?;
    let q = q as i64;
    let mut vectors = Vec::new();
    for x in -q..=q {
        for y in -q..=q {
            let v = LatticeVector::new(x, y);
            if !v.is_zero() && table.is_visible(v)? {
                vectors.push(v);
            }
        }
    }
    radial_sort_bucket(&VectorSequence::new(vectors))
}

/// Vertices of the Jarnik polygon of order `q`, translated onto the grid.
pub fn jarnik_polygon(q: u64) -> Result<PointSet> {
    translate_to_grid(&accumulate(&jarnik_vectors(q)?)?)
}

/// Vertex count `4 + 4 #{coprime (i, j) in [1, Q]^2}` and size
/// `1 + 2 sum i` over the same pairs, by direct summation.
pub fn jarnik_counts(q: u64) -> Result<JarnikSummary> {
    if q == 0 {
        return Err(Error::Domain("Jarnik counts need Q >= 1".into()));
    }
    let table = GcdTable::new(q as usize)?;
    let mut coprime = 0u64;
    let mut weighted = 0u64;
    for i in 1..=q {
        for j in 1..=q {
            if table.gcd(i, j)? == 1 {
                coprime += 1;
                weighted += i;
            }
        }
    }
    Ok(JarnikSummary { q, vertex_count: 4 + 4 * coprime, size_s: 1 + 2 * weighted })
}

fn parabola(x: i64) -> i64 {
    x * x + x
}

/// The quadratic-size double circle on the parabola `y = x^2 + x`: odd
/// abscissae on the curve, even ones lifted by 2, and a final point
/// `(n, 2n^2 - n)` just below the midpoint of the outer chord.
pub fn quadratic_baseline(n: usize) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::Domain(format!("quadratic baseline needs n >= 3, got {n}")));
    }
    // keeps f(2n - 1) well inside i64
    if n > 1 << 30 {
        return Err(Error::Overflow("quadratic_baseline"));
    }
    let n = n as i64;
    let mut points: Vec<LatticeVector> = (1..2 * n)
        .map(|i| LatticeVector::new(i, if i % 2 == 1 { parabola(i) } else { parabola(i) + 2 }))
        .collect();
    points.push(LatticeVector::new(n, 2 * n * n - n));
    Ok(PointSet::new(points))
}

/// The generating sequence `[(1,1), ..., (1,n), (-1,-1), ..., (-1,-n)]`
/// of the naive construction.
pub fn naive_vectors(n: usize) -> Result<VectorSequence> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::Domain(format!("naive construction needs even n >= 4, got {n}")));
    }
    let n = i64::try_from(n).map_err(|_| Error::Overflow("naive_symmetric"))?;
    let first: Vec<LatticeVector> = (1..=n).map(|k| LatticeVector::new(1, k)).collect();
    let second = first.iter().map(|v| v.checked_neg()).collect::<Result<Vec<_>>>()?;
    Ok(VectorSequence::new([first, second].concat()))
}

/// `P(alt(V))` for the naive symmetric sequence; size grows as `n(n+1)/2`.
pub fn naive_symmetric(n: usize) -> Result<PointSet> {
    accumulate(&alt(&naive_vectors(n)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(list: &[(i64, i64)]) -> Vec<LatticeVector> {
        list.iter().map(|&p| LatticeVector::from(p)).collect()
    }

    fn extents(set: &PointSet) -> (i64, i64) {
        let xs = set.points().iter().map(|p| p.x);
        let ys = set.points().iter().map(|p| p.y);
        (xs.clone().max().unwrap() - xs.min().unwrap(), ys.clone().max().unwrap() - ys.min().unwrap())
    }

    #[test]
    fn double_circle_trace_for_three() {
        let raw = accumulate(&double_circle_steps(3).unwrap()).unwrap();
        assert_eq!(raw.points(), pts(&[(3, 2), (6, 3), (4, 4), (3, 6), (2, 3), (0, 0)]));
        // already on the grid, so translation is the identity
        assert_eq!(build_double_circle(3).unwrap(), raw);
    }

    #[test]
    fn double_circle_steps_close_up() {
        for n in 3..300 {
            let steps = double_circle_steps(n).unwrap();
            assert_eq!(steps.len(), 2 * n);
            let sum = steps.as_slice().iter().fold(LatticeVector::ORIGIN, |acc, v| acc.checked_add(*v).unwrap());
            assert_eq!(sum, LatticeVector::ORIGIN, "n = {n}");
        }
        assert!(matches!(build_double_circle(2), Err(Error::Domain(_))));
    }

    #[test]
    fn fused_build_matches_staged_pipeline() {
        for n in (3..400).chain([1000, 4099]) {
            let staged = translate_to_grid(&accumulate(&double_circle_steps(n).unwrap()).unwrap()).unwrap();
            assert_eq!(build_double_circle(n).unwrap(), staged, "n = {n}");
        }
    }

    #[test]
    fn translate_examples() {
        let set = PointSet::new(pts(&[(2, 3), (5, 7)]));
        assert_eq!(translate_to_grid(&set).unwrap().points(), pts(&[(0, 0), (3, 4)]));
        let normalized = PointSet::new(pts(&[(0, 4), (2, 0)]));
        assert_eq!(translate_to_grid(&normalized).unwrap(), normalized);
        let labelled = PointSet::with_labels(pts(&[(-1, -1), (1, 2)]), vec![Role::HullVertex, Role::InnerPoint]).unwrap();
        assert_eq!(translate_to_grid(&labelled).unwrap().labels(), labelled.labels());
        assert!(translate_to_grid(&PointSet::default()).is_err());
    }

    #[test]
    fn jarnik_counts_small() {
        assert_eq!(jarnik_counts(1).unwrap(), JarnikSummary { q: 1, vertex_count: 8, size_s: 3 });
        assert_eq!(jarnik_counts(2).unwrap(), JarnikSummary { q: 2, vertex_count: 16, size_s: 9 });
        assert!(jarnik_counts(0).is_err());
        for q in 1..60 {
            assert_eq!(jarnik_counts(q).unwrap().vertex_count % 8, 0);
        }
    }

    #[test]
    fn jarnik_polygon_matches_counts() {
        assert_eq!(jarnik_polygon(1).unwrap().len(), 8);
        assert_eq!(jarnik_polygon(2).unwrap().len(), 16);
        assert!(jarnik_polygon(0).is_err());
        for q in 1..=100 {
            let poly = jarnik_polygon(q).unwrap();
            let summary = jarnik_counts(q).unwrap();
            assert_eq!(poly.len() as u64, summary.vertex_count);
            let (w, h) = extents(&poly);
            assert_eq!(w, h);
            assert_eq!(w as u64, summary.size_s, "Q = {q}");
        }
    }

    #[test]
    fn quadratic_baseline_examples() {
        let b = quadratic_baseline(3).unwrap();
        assert_eq!(b.points(), pts(&[(1, 2), (2, 8), (3, 12), (4, 22), (5, 30), (3, 15)]));
        assert_eq!(parabola(1), 2);
        for n in 3..50i64 {
            assert_eq!(parabola(2 * n - 1), 4 * n * n - 2 * n);
            let b = quadratic_baseline(n as usize).unwrap();
            assert_eq!(*b.points().last().unwrap(), LatticeVector::new(n, 2 * n * n - n));
            let (w, h) = extents(&b);
            assert_eq!(w.max(h), 4 * n * n - 2 * n - 2);
        }
        assert!(quadratic_baseline(2).is_err());
    }

    #[test]
    fn naive_examples() {
        let v = naive_vectors(4).unwrap();
        let half = v.len() / 2;
        for i in 0..half {
            assert_eq!(v.as_slice()[i + half], v.as_slice()[i].checked_neg().unwrap());
        }
        // prefix sums of alt([(1,1),(1,2),(1,3),(1,4),(-1,-1),...])
        let p = naive_symmetric(4).unwrap();
        assert_eq!(p.points(), pts(&[(1, 2), (2, 3), (3, 7), (4, 10), (3, 8), (2, 7), (1, 3), (0, 0)]));
        for n in (4..=64).step_by(2) {
            let (_, h) = extents(&naive_symmetric(n).unwrap());
            assert_eq!(h as usize, n * (n + 1) / 2);
        }
        assert!(naive_symmetric(5).is_err());
        assert!(naive_symmetric(2).is_err());
    }
}
