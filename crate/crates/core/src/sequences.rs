//! Sequences of lattice vectors: the symmetric sequence of `2n` visible
//! vectors, exact radial sorting, and the `alt` / scaling / prefix-sum
//! operators used by the constructions.

use std::cmp::Ordering;

use crate::constructions::PointSet;
use crate::error::{Error, Result};
use crate::lattice::{GcdTable, LatticeVector, DEFAULT_TABLE_BUDGET};

/// An ordered list of lattice vectors.
///
/// `sorted_ccw` certifies that the vectors are in strictly increasing
/// counterclockwise order starting from direction `(1, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VectorSequence {
    vectors: Vec<LatticeVector>,
    sorted_ccw: bool,
}

impl VectorSequence {
    pub fn new(vectors: Vec<LatticeVector>) -> Self {
        VectorSequence { vectors, sorted_ccw: false }
    }

    fn sorted(vectors: Vec<LatticeVector>) -> Self {
        VectorSequence { vectors, sorted_ccw: true }
    }

    pub fn as_slice(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn into_vec(self) -> Vec<LatticeVector> {
        self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn is_sorted_ccw(&self) -> bool {
        self.sorted_ccw
    }

    /// Even length, `v[i + t] = -v[i]` for every `i < t`, and the whole
    /// sequence is a rotation of a strictly counterclockwise order.
    pub fn is_symmetric(&self) -> bool {
        let len = self.vectors.len();
        if len < 2 || len % 2 != 0 {
            return false;
        }
        let half = len / 2;
        let antipodal = (0..half).all(|i| {
            let (a, b) = (self.vectors[i], self.vectors[i + half]);
            a.x.checked_neg() == Some(b.x) && a.y.checked_neg() == Some(b.y)
        });
        antipodal && (len == 2 || is_cyclically_ccw(&self.vectors))
    }
}

impl From<Vec<LatticeVector>> for VectorSequence {
    fn from(vectors: Vec<LatticeVector>) -> Self {
        VectorSequence::new(vectors)
    }
}

/// A rotation of a strictly increasing angular order has exactly one
/// cyclic position where the order does not increase.
fn is_cyclically_ccw(vectors: &[LatticeVector]) -> bool {
    if vectors.iter().any(|v| v.is_zero()) {
        return false;
    }
    let len = vectors.len();
    let descents = (0..len)
        .filter(|&i| angular_cmp(vectors[i], vectors[(i + 1) % len]) != Ordering::Less)
        .count();
    descents == 1
}

/// Vectors with `|x| + |y| = k`, as a unit of the shell-by-shell generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct L1Shell {
    k: u64,
}

impl L1Shell {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("l1 shell index must be at least 1".into()));
        }
        Ok(L1Shell { k })
    }

    pub fn k(self) -> u64 {
        self.k
    }

    /// Visible vectors of the shell, grouped in antipodal pairs in
    /// generation order: for `i = 1..k-1` with `gcd(i, k - i) = 1`,
    /// `(i, j), (-i, -j)` then `(-i, j), (i, -j)`. Shell 1 yields the
    /// four axis vectors.
    pub fn antipodal_pairs(self, table: &GcdTable) -> Result<Vec<[LatticeVector; 2]>> {
        let k = self.k as i64;
        if k == 1 {
            return Ok(vec![
                [LatticeVector::new(1, 0), LatticeVector::new(-1, 0)],
                [LatticeVector::new(0, 1), LatticeVector::new(0, -1)],
            ]);
        }
        let mut pairs = Vec::new();
        for i in 1..k {
            let j = k - i;
            if table.gcd(i as u64, j as u64)? == 1 {
                pairs.push([LatticeVector::new(i, j), LatticeVector::new(-i, -j)]);
                pairs.push([LatticeVector::new(-i, j), LatticeVector::new(i, -j)]);
            }
        }
        Ok(pairs)
    }
}

/// Generation-order (unsorted) output of the visible-vector algorithm:
/// whole `l1` shells in increasing order, truncated pairwise at `2n`.
pub fn generate_visible_vectors(n: usize) -> Result<Vec<LatticeVector>> {
    if n < 3 {
        return Err(Error::Domain(format!("visible_vectors needs n >= 3, got {n}")));
    }
    let target = n.checked_mul(2).ok_or(Error::Overflow("visible_vectors"))?;
    // Shells up to k hold about 1.216 k^2 visible vectors, so 2n are
    // reached near k = 1.28 sqrt(n); the table is rebuilt larger if the
    // estimate ever falls short.
    let mut bound = (1.35 * (n as f64).sqrt()).ceil() as usize + 4;
    let mut table = GcdTable::with_budget(bound, DEFAULT_TABLE_BUDGET)?;
    let mut out = Vec::with_capacity(target);
    let mut k = 1u64;
    while out.len() < target {
        if k as usize > bound {
            bound *= 2;
            table = GcdTable::with_budget(bound, DEFAULT_TABLE_BUDGET)?;
        }
        for pair in L1Shell::new(k)?.antipodal_pairs(&table)? {
            if out.len() >= target {
                break;
            }
            out.extend_from_slice(&pair);
        }
        k += 1;
    }
    Ok(out)
}

/// The symmetric sequence of `2n` visible vectors, sorted counterclockwise
/// from `(1, 0)`.
pub fn visible_vectors(n: usize) -> Result<VectorSequence> {
    radial_sort_bucket_owned(generate_visible_vectors(n)?)
}

/// Open-quadrant index in `0..4`, counterclockwise from the positive x axis.
/// Each quadrant includes the axis ray that starts it.
fn quadrant(v: LatticeVector) -> u8 {
    match (v.x.signum(), v.y.signum()) {
        (1, 0..=1) => 0,
        (-1..=0, 1) => 1,
        (-1, -1..=0) => 2,
        _ => 3,
    }
}

/// Exact counterclockwise angular order starting at direction `(1, 0)`.
/// Vectors with the same direction compare equal. Panics on the zero
/// vector, which has no direction.
pub fn angular_cmp(a: LatticeVector, b: LatticeVector) -> Ordering {
    assert!(!a.is_zero() && !b.is_zero(), "angular_cmp on the zero vector");
    quadrant(a).cmp(&quadrant(b)).then_with(|| {
        // Same quadrant: both products share a sign, so the difference fits.
        let cross = a.x as i128 * b.y as i128 - a.y as i128 * b.x as i128;
        0i128.cmp(&cross)
    })
}

/// Comparison-sort reference for [`radial_sort_bucket`].
pub fn radial_sort_compare(seq: &VectorSequence) -> Result<VectorSequence> {
    if seq.vectors.iter().any(|v| v.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let mut vectors = seq.vectors.clone();
    vectors.sort_by(|&a, &b| angular_cmp(a, b));
    if let Some(w) = vectors.windows(2).find(|w| angular_cmp(w[0], w[1]) == Ordering::Equal) {
        return Err(Error::DuplicateDirection(w[0], w[1]));
    }
    Ok(VectorSequence::sorted(vectors))
}

/// Bucket of a first-quadrant vector `(i, j)` among `m^2` triangles of
/// area 1/2 fanned between `(0, m)` and `(m, 0)`: `ceil(i * m^2 / (i + j))`.
pub fn bucket_index(i: u64, j: u64, m: u64) -> u64 {
    let num = i as u128 * m as u128 * m as u128;
    let den = (i + j) as u128;
    num.div_ceil(den) as u64
}

/// Rotates `v` by a multiple of 90 degrees into the closed first quadrant,
/// keeping the angular order inside its quadrant.
fn rotate_into_first(v: LatticeVector, q: u8) -> (u64, u64) {
    let (x, y) = match q {
        0 => (v.x, v.y),
        1 => (v.y, -v.x),
        2 => (-v.x, -v.y),
        _ => (-v.y, v.x),
    };
    (x as u64, y as u64)
}

/// Linear-time counterclockwise sort of distinct-direction vectors with
/// `l1` norm below `m = 1 + max l1 norm`.
///
/// Axis vectors are placed directly. Vectors strictly inside a quadrant are
/// rotated into the first quadrant and dropped into one of `m^2` buckets;
/// any two vectors sharing a bucket would span a triangle of area below 1/2,
/// so a collision means a duplicated direction or a non-visible input.
/// Bucket indices grow clockwise, so buckets are read in decreasing order.
pub fn radial_sort_bucket(seq: &VectorSequence) -> Result<VectorSequence> {
    Ok(bucket_order(&seq.vectors)?.decode())
}

/// [`radial_sort_bucket`] on an owned list, released as soon as the bucket
/// entries are built so a large sort holds only one list of vectors.
fn radial_sort_bucket_owned(vectors: Vec<LatticeVector>) -> Result<VectorSequence> {
    let order = bucket_order(&vectors)?;
    drop(vectors);
    Ok(order.decode())
}

const DIGIT_BITS: u32 = 9;
/// Key that sorts above every bucket of its quadrant; used for the axis
/// vector, which starts the quadrant.
const AXIS_KEY: u32 = (1 << (3 * DIGIT_BITS)) - 1;

/// Bucket key and the rotated vector packed as `i << 16 | j`. The budget on
/// `m^2` keeps every coordinate below `2^13`.
type Entry = (u32, u32);

/// The sorted entries of each quadrant, laid out contiguously.
struct BucketOrder {
    entries: Vec<Entry>,
    starts: [usize; 5],
}

impl BucketOrder {
    fn decode(&self) -> VectorSequence {
        let mut out = Vec::with_capacity(self.entries.len());
        for q in 0..4u8 {
            let range = self.starts[q as usize]..self.starts[q as usize + 1];
            out.extend(self.entries[range].iter().map(|&(_, packed)| unpack(packed, q)));
        }
        VectorSequence::sorted(out)
    }
}

fn unpack(packed: u32, q: u8) -> LatticeVector {
    let (i, j) = ((packed >> 16) as i64, (packed & 0xffff) as i64);
    match q {
        0 => LatticeVector::new(i, j),
        1 => LatticeVector::new(-j, i),
        2 => LatticeVector::new(-i, -j),
        _ => LatticeVector::new(j, -i),
    }
}

/// Buckets every vector and sorts each quadrant by decreasing key.
///
/// Keys are distributed with three stable counting passes over 9-bit
/// digits rather than one scatter into an `m^2` slot array: the bucket
/// order is the same, but every pass streams through memory instead of
/// writing at random into a table far larger than cache.
fn bucket_order(vectors: &[LatticeVector]) -> Result<BucketOrder> {
    let mut max_l1 = 0u64;
    let mut sizes = [0usize; 4];
    for v in vectors {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let l1 = v.l1_norm().filter(|&l| l < u32::MAX as u64).ok_or(Error::Overflow("radial_sort_bucket"))?;
        max_l1 = max_l1.max(l1);
        sizes[quadrant(*v) as usize] += 1;
    }
    let m = max_l1 + 1;
    let buckets = m as u128 * m as u128;
    if buckets >= DEFAULT_TABLE_BUDGET as u128 {
        return Err(Error::Capacity { m: m as usize, cells: buckets, budget: DEFAULT_TABLE_BUDGET });
    }
    debug_assert!(buckets < AXIS_KEY as u128 && m < 1 << 16);

    let mut starts = [0usize; 5];
    for q in 0..4 {
        starts[q + 1] = starts[q] + sizes[q];
    }
    let mut fill = starts;
    let mut entries = vec![(0u32, 0u32); vectors.len()];
    let mut axis: [Option<LatticeVector>; 4] = [None; 4];
    for &v in vectors {
        let q = quadrant(v);
        let (i, j) = rotate_into_first(v, q);
        let key = if j == 0 {
            if let Some(prev) = axis[q as usize] {
                return Err(Error::DuplicateDirection(prev, v));
            }
            axis[q as usize] = Some(v);
            AXIS_KEY
        } else {
            bucket_index(i, j, m) as u32
        };
        entries[fill[q as usize]] = (key, (i as u32) << 16 | j as u32);
        fill[q as usize] += 1;
    }

    let mut scratch = vec![(0u32, 0u32); sizes.iter().copied().max().unwrap_or(0)];
    for q in 0..4u8 {
        let members = &mut entries[starts[q as usize]..starts[q as usize + 1]];
        let scratch = &mut scratch[..members.len()];
        counting_pass(members, scratch, 0);
        counting_pass(scratch, members, DIGIT_BITS);
        counting_pass(members, scratch, 2 * DIGIT_BITS);
        if let Some(pair) = scratch.windows(2).find(|pair| pair[0].0 == pair[1].0) {
            return Err(Error::BucketCollision {
                bucket: pair[0].0 as u64,
                first: unpack(pair[0].1, q),
                second: unpack(pair[1].1, q),
            });
        }
        // buckets grow clockwise, so read them from the top down
        for (slot, &entry) in members.iter_mut().zip(scratch.iter().rev()) {
            *slot = entry;
        }
    }
    Ok(BucketOrder { entries, starts })
}

/// One stable counting-sort pass of `src` into `dst` on the digit of the
/// bucket key starting at bit `shift`.
fn counting_pass(src: &[Entry], dst: &mut [Entry], shift: u32) {
    let mask = (1u32 << DIGIT_BITS) - 1;
    let mut starts = vec![0usize; 1 << DIGIT_BITS];
    for &(key, _) in src {
        starts[((key >> shift) & mask) as usize] += 1;
    }
    let mut total = 0;
    for start in starts.iter_mut() {
        let count = *start;
        *start = total;
        total += count;
    }
    for &entry in src {
        let digit = ((entry.0 >> shift) & mask) as usize;
        dst[starts[digit]] = entry;
        starts[digit] += 1;
    }
}

/// Swaps each adjacent pair: `[v2, v1, v4, v3, ...]`.
pub fn alt(seq: &VectorSequence) -> Result<VectorSequence> {
    if seq.len() % 2 != 0 {
        return Err(Error::Domain(format!("alt needs an even-length sequence, got {}", seq.len())));
    }
    let vectors = seq.vectors.chunks_exact(2).flat_map(|p| [p[1], p[0]]).collect();
    Ok(VectorSequence::new(vectors))
}

/// Multiplies every vector by the integer `c`.
pub fn scale(c: i64, seq: &VectorSequence) -> Result<VectorSequence> {
    if c == 0 {
        return Err(Error::Domain("scale factor must be nonzero".into()));
    }
    let vectors = seq.vectors.iter().map(|v| v.checked_scale(c)).collect::<Result<Vec<_>>>()?;
    Ok(VectorSequence { vectors, sorted_ccw: seq.sorted_ccw && c > 0 })
}

/// Prefix sums `p1 = v1, p_i = p_{i-1} + v_i`.
pub fn accumulate(seq: &VectorSequence) -> Result<PointSet> {
    if seq.is_empty() {
        return Err(Error::Domain("accumulate needs a nonempty sequence".into()));
    }
    let mut points = Vec::with_capacity(seq.len());
    let mut acc = LatticeVector::ORIGIN;
    for &v in &seq.vectors {
        acc = acc.checked_add(v)?;
        points.push(acc);
    }
    Ok(PointSet::new(points))
}
