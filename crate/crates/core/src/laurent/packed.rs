//! Fast paths for multiplication and exact division.
//!
//! Each operand's exponents are biased by their per-variable minimum and
//! packed into a `u128` whose most significant field is the biased total
//! degree, followed by one field per variable in table order. With that
//! layout, integer comparison of keys agrees with the graded-lexicographic
//! order on [`Mono`] and monomial multiplication is integer addition.
//! Coefficients are carried as `i128` with checked arithmetic. Whenever the
//! layout does not fit in 128 bits or a coefficient overflows, the callers
//! fall back to the generic `BigInt` code.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::Mono;

/// Exponent ranges of one operand.
struct Bounds {
    positions: Vec<u32>,
    min: Vec<i64>,
    max: Vec<i64>,
    deg_min: i64,
    deg_max: i64,
}

impl Bounds {
    fn of(terms: &BTreeMap<Mono, BigInt>, positions: &[u32]) -> Self {
        let n = positions.len();
        let mut min = vec![i64::MAX; n];
        let mut max = vec![i64::MIN; n];
        let (mut deg_min, mut deg_max) = (i64::MAX, i64::MIN);
        let mut dense = vec![0i64; n];
        for m in terms.keys() {
            fill_dense(m, positions, &mut dense);
            for i in 0..n {
                min[i] = min[i].min(dense[i]);
                max[i] = max[i].max(dense[i]);
            }
            let d = m.degree();
            deg_min = deg_min.min(d);
            deg_max = deg_max.max(d);
        }
        Self {
            positions: positions.to_vec(),
            min,
            max,
            deg_min,
            deg_max,
        }
    }

    fn width(&self, i: usize) -> i64 {
        self.max[i] - self.min[i]
    }

    fn deg_width(&self) -> i64 {
        self.deg_max - self.deg_min
    }
}

/// Bit positions of the degree field and the variable fields.
struct Layout {
    deg_shift: u32,
    shifts: Vec<u32>,
    masks: Vec<u128>,
    deg_mask: u128,
}

fn bits(range: i64) -> u32 {
    64 - (range as u64).leading_zeros()
}

impl Layout {
    /// Allocates fields able to hold the given maximal values, or `None`
    /// when they do not fit into a single `u128`.
    fn new(deg_range: i64, ranges: &[i64]) -> Option<Self> {
        let deg_bits = bits(deg_range);
        let var_bits: Vec<u32> = ranges.iter().map(|&r| bits(r)).collect();
        let total: u32 = deg_bits + var_bits.iter().sum::<u32>();
        if total > 127 {
            return None;
        }
        let mut shift = total;
        let deg_shift = shift - deg_bits;
        shift = deg_shift;
        let mut shifts = Vec::with_capacity(ranges.len());
        let mut masks = Vec::with_capacity(ranges.len());
        for &b in &var_bits {
            shift -= b;
            shifts.push(shift);
            masks.push((1u128 << b) - 1);
        }
        Some(Self {
            deg_shift,
            shifts,
            masks,
            deg_mask: (1u128 << deg_bits) - 1,
        })
    }

    fn encode(&self, m: &Mono, b: &Bounds, dense: &mut [i64]) -> u128 {
        fill_dense(m, &b.positions, dense);
        let mut key = ((m.degree() - b.deg_min) as u128) << self.deg_shift;
        for (i, &e) in dense.iter().enumerate() {
            key |= ((e - b.min[i]) as u128) << self.shifts[i];
        }
        key
    }

    fn field(&self, key: u128, i: usize) -> i64 {
        ((key >> self.shifts[i]) & self.masks[i]) as i64
    }

    fn deg_field(&self, key: u128) -> i64 {
        ((key >> self.deg_shift) & self.deg_mask) as i64
    }

    fn decode(&self, key: u128, positions: &[u32], bias: &[i64]) -> Mono {
        let mut out: SmallVec<[(u32, i32); 4]> = SmallVec::new();
        for (i, &p) in positions.iter().enumerate() {
            let e = self.field(key, i) + bias[i];
            if e != 0 {
                out.push((p, e as i32));
            }
        }
        Mono(out)
    }
}

fn fill_dense(m: &Mono, positions: &[u32], dense: &mut [i64]) {
    dense.iter_mut().for_each(|e| *e = 0);
    let mut i = 0;
    for &(p, e) in &m.0 {
        while positions[i] != p {
            i += 1;
        }
        dense[i] = e as i64;
    }
}

fn union_positions(a: &BTreeMap<Mono, BigInt>, b: &BTreeMap<Mono, BigInt>) -> Vec<u32> {
    let mut ps: Vec<u32> = a
        .keys()
        .chain(b.keys())
        .flat_map(|m| m.0.iter().map(|&(p, _)| p))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

fn packed_coeffs(
    terms: &BTreeMap<Mono, BigInt>,
    layout: &Layout,
    b: &Bounds,
) -> Option<Vec<(u128, i128)>> {
    let mut dense = vec![0i64; b.positions.len()];
    terms
        .iter()
        .map(|(m, c)| Some((layout.encode(m, b, &mut dense), c.to_i128()?)))
        .collect()
}

fn unpack(
    mut packed: Vec<(u128, i128)>,
    layout: &Layout,
    positions: &[u32],
    bias: &[i64],
) -> BTreeMap<Mono, BigInt> {
    packed.sort_unstable_by_key(|&(k, _)| k);
    packed
        .into_iter()
        .map(|(k, c)| (layout.decode(k, positions, bias), BigInt::from(c)))
        .collect()
}

/// Which accumulator a fast operation may use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(super) enum Path {
    /// Dense when the projected box is small enough, sparse otherwise.
    Auto,
    Dense,
    Sparse,
}

/// Product of two term maps, or `None` if the fast path does not apply.
pub(super) fn mul(
    a: &BTreeMap<Mono, BigInt>,
    b: &BTreeMap<Mono, BigInt>,
) -> Option<BTreeMap<Mono, BigInt>> {
    mul_with(a, b, Path::Auto)
}

fn mul_with(
    a: &BTreeMap<Mono, BigInt>,
    b: &BTreeMap<Mono, BigInt>,
    path: Path,
) -> Option<BTreeMap<Mono, BigInt>> {
    let positions = union_positions(a, b);
    let ba = Bounds::of(a, &positions);
    let bb = Bounds::of(b, &positions);
    let ranges: Vec<i64> = (0..positions.len())
        .map(|i| ba.width(i) + bb.width(i))
        .collect();
    let bias: Vec<i64> = (0..positions.len())
        .map(|i| ba.min[i] + bb.min[i])
        .collect();
    if path != Path::Sparse {
        match dense_mul(a, &ba, b, &bb, &ranges)? {
            Some(product) => return Some(product),
            None if path == Path::Dense => return None,
            None => {}
        }
    }
    let layout = Layout::new(ba.deg_width() + bb.deg_width(), &ranges)?;
    let pa = packed_coeffs(a, &layout, &ba)?;
    let pb = packed_coeffs(b, &layout, &bb)?;
    let mut acc: FxHashMap<u128, i128> = FxHashMap::default();
    acc.reserve((pa.len() * pb.len()).min(4 * (pa.len() + pb.len())));
    for &(ka, ca) in &pa {
        for &(kb, cb) in &pb {
            let c = ca.checked_mul(cb)?;
            let slot = acc.entry(ka + kb).or_insert(0);
            *slot = slot.checked_add(c)?;
        }
    }
    let packed: Vec<(u128, i128)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    Some(unpack(packed, &layout, &positions, &bias))
}

/// Largest dense accumulator, in entries.
const DENSE_LIMIT: usize = 1 << 23;

/// Dense accumulation of a product over a subset of the coordinates.
///
/// All exponent vectors of the product lie in an affine subspace spanned by
/// the differences within each factor. Projecting onto coordinates whose
/// columns have full rank on that subspace is injective, so products can be
/// accumulated in a flat array indexed by a mixed radix over those
/// coordinates only. Each slot remembers one pair of factor terms that hit
/// it, which gives back the full monomial.
struct DenseBox {
    coords: Vec<usize>,
    strides: Vec<usize>,
    sizes: Vec<usize>,
    len: usize,
}

/// Incrementally built integer row echelon basis.
struct Echelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl Echelon {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current rows; returns whether
    /// it was added.
    fn insert(&mut self, mut v: Vec<i128>) -> bool {
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            let p = row[*pivot];
            for (x, &r) in v.iter_mut().zip(row) {
                *x = *x * p - c * r;
            }
            let g = v.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

impl DenseBox {
    fn new(da: &[Vec<i64>], db: &[Vec<i64>], ranges: &[i64], products: usize) -> Option<Self> {
        let n = ranges.len();
        let mut span = Echelon::new();
        for d in [da, db] {
            for e in &d[1..] {
                if span.rank() == n {
                    break;
                }
                span.insert(
                    e.iter()
                        .zip(&d[0])
                        .map(|(&x, &y)| (x - y) as i128)
                        .collect(),
                );
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| ranges[i]);
        let mut cols = Echelon::new();
        let mut coords = Vec::new();
        for i in order {
            if cols.rank() == span.rank() {
                break;
            }
            let column: Vec<i128> = span.rows.iter().map(|(_, r)| r[i]).collect();
            if cols.insert(column) {
                coords.push(i);
            }
        }
        coords.sort_unstable();
        let mut len: usize = 1;
        let mut strides = vec![0; coords.len()];
        let mut sizes = vec![0; coords.len()];
        for (k, &i) in coords.iter().enumerate().rev() {
            strides[k] = len;
            sizes[k] = usize::try_from(ranges[i]).ok()? + 1;
            len = len.checked_mul(sizes[k])?;
            if len > DENSE_LIMIT {
                return None;
            }
        }
        if len > products.saturating_mul(4) {
            return None;
        }
        Some(Self {
            coords,
            strides,
            sizes,
            len,
        })
    }

    fn digit(&self, idx: usize, k: usize) -> usize {
        (idx / self.strides[k]) % self.sizes[k]
    }

    fn index(&self, e: &[i64], min: &[i64]) -> usize {
        self.coords
            .iter()
            .zip(&self.strides)
            .map(|(&i, &s)| (e[i] - min[i]) as usize * s)
            .sum()
    }
}

fn dense_exponents(terms: &BTreeMap<Mono, BigInt>, positions: &[u32]) -> Vec<Vec<i64>> {
    terms
        .keys()
        .map(|m| {
            let mut d = vec![0i64; positions.len()];
            fill_dense(m, positions, &mut d);
            d
        })
        .collect()
}

fn dense_mul(
    a: &BTreeMap<Mono, BigInt>,
    ba: &Bounds,
    b: &BTreeMap<Mono, BigInt>,
    bb: &Bounds,
    ranges: &[i64],
) -> Option<Option<BTreeMap<Mono, BigInt>>> {
    let da = dense_exponents(a, &ba.positions);
    let db = dense_exponents(b, &bb.positions);
    let Some(dense) = DenseBox::new(&da, &db, ranges, a.len() * b.len()) else {
        return Some(None);
    };
    let coeffs = |t: &BTreeMap<Mono, BigInt>| -> Option<Vec<i128>> {
        t.values().map(|c| c.to_i128()).collect()
    };
    let (ca, cb) = (coeffs(a)?, coeffs(b)?);
    let ia: Vec<usize> = da.iter().map(|e| dense.index(e, &ba.min)).collect();
    let ib: Vec<usize> = db.iter().map(|e| dense.index(e, &bb.min)).collect();
    let mut acc = vec![0i128; dense.len];
    let mut witness = vec![(0u32, 0u32); dense.len];
    for (i, (&xa, &ka)) in ia.iter().zip(&ca).enumerate() {
        for (j, (&xb, &kb)) in ib.iter().zip(&cb).enumerate() {
            let idx = xa + xb;
            let slot = &mut acc[idx];
            if *slot == 0 {
                witness[idx] = (i as u32, j as u32);
            }
            *slot = slot.checked_add(ka.checked_mul(kb)?)?;
        }
    }
    let ma: Vec<&Mono> = a.keys().collect();
    let mb: Vec<&Mono> = b.keys().collect();
    let mut out: Vec<(Mono, BigInt)> = acc
        .iter()
        .zip(&witness)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, &(i, j))| (ma[i as usize] * mb[j as usize], BigInt::from(c)))
        .collect();
    out.sort_unstable_by(|x, y| x.0.cmp(&y.0));
    Some(Some(out.into_iter().collect()))
}

/// Outcome of the fast exact division.
pub(super) enum Division {
    Exact(BTreeMap<Mono, BigInt>),
    NotDivisible,
    Unsupported,
}

#[derive(PartialEq, Eq)]
struct HeapEntry {
    key: u128,
    quotient: u32,
    divisor: u32,
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact division `p / d` of Laurent polynomials with at least two terms in
/// `d`.
///
/// If the quotient exists, its minimal and maximal exponent in every
/// variable (and in total degree) are the differences of those of `p` and
/// `d`, so a layout wide enough for `p` holds every quotient term and every
/// intermediate product. The remainder is kept in one hash bucket per total
/// degree. Buckets are processed from the top degree down; each one is
/// divided by the top homogeneous component of `d` in order, and the new
/// quotient layer times the lower components of `d` is scattered into the
/// lower buckets.
pub(super) fn divide(p: &BTreeMap<Mono, BigInt>, d: &BTreeMap<Mono, BigInt>) -> Division {
    divide_with(p, d, Path::Auto)
}

fn divide_with(p: &BTreeMap<Mono, BigInt>, d: &BTreeMap<Mono, BigInt>, path: Path) -> Division {
    let positions = union_positions(p, d);
    let n = positions.len();
    let bp = Bounds::of(p, &positions);
    let bd = Bounds::of(d, &positions);
    let q_ranges: Vec<i64> = (0..n).map(|i| bp.width(i) - bd.width(i)).collect();
    let q_deg_range = bp.deg_width() - bd.deg_width();
    if q_deg_range < 0 || q_ranges.iter().any(|&r| r < 0) {
        return Division::NotDivisible;
    }
    let ranges: Vec<i64> = (0..n).map(|i| bp.width(i)).collect();
    if path != Path::Sparse {
        match dense_divide(p, &bp, d, &bd, &ranges, &q_ranges) {
            Some(outcome) => return outcome,
            None if path == Path::Dense => return Division::Unsupported,
            None => {}
        }
    }
    let Some(layout) = Layout::new(bp.deg_width(), &ranges) else {
        return Division::Unsupported;
    };
    let (Some(pp), Some(mut dd)) = (
        packed_coeffs(p, &layout, &bp),
        packed_coeffs(d, &layout, &bd),
    ) else {
        return Division::Unsupported;
    };
    dd.reverse();
    let top_deg = layout.deg_field(dd[0].0);
    let split = dd.partition_point(|&(k, _)| layout.deg_field(k) == top_deg);
    let (d_top, d_rest) = dd.split_at(split);

    let mut buckets: Vec<FxHashMap<u128, i128>> =
        (0..=bp.deg_width()).map(|_| FxHashMap::default()).collect();
    for &(k, c) in &pp {
        buckets[layout.deg_field(k) as usize].insert(k, c);
    }
    let layer = LayerDivision {
        layout: &layout,
        q_ranges: &q_ranges,
        divisor: d_top,
    };
    let mut quotient: Vec<(u128, i128)> = Vec::new();
    for t in (0..buckets.len()).rev() {
        let mut rem: Vec<(u128, i128)> = std::mem::take(&mut buckets[t])
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .collect();
        if rem.is_empty() {
            continue;
        }
        if (t as i64) < top_deg || t as i64 - top_deg > q_deg_range {
            return Division::NotDivisible;
        }
        rem.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        let q_layer = match layer.run(&rem) {
            Ok(q) => q,
            Err(outcome) => return outcome,
        };
        for &(qk, qc) in &q_layer {
            for &(dk, dc) in d_rest {
                let key = qk + dk;
                let Some(prod) = qc.checked_mul(dc) else {
                    return Division::Unsupported;
                };
                let slot = buckets[layout.deg_field(key) as usize]
                    .entry(key)
                    .or_insert(0);
                let Some(next) = slot.checked_sub(prod) else {
                    return Division::Unsupported;
                };
                *slot = next;
            }
        }
        quotient.extend(q_layer);
    }
    let bias: Vec<i64> = (0..n).map(|i| bp.min[i] - bd.min[i]).collect();
    Division::Exact(unpack(quotient, &layout, &positions, &bias))
}

/// Exact division over a projected dense box, or `None` if the box is too
/// large.
///
/// Slot indices are additive and ordered lexicographically in the projected
/// coordinates, which is a monomial order on the common affine lattice. The
/// leading term of `d` is therefore the highest slot of `d`, and scanning the
/// remainder from the top slot down turns each nonzero slot into the next
/// quotient term.
fn dense_divide(
    p: &BTreeMap<Mono, BigInt>,
    bp: &Bounds,
    d: &BTreeMap<Mono, BigInt>,
    bd: &Bounds,
    ranges: &[i64],
    q_ranges: &[i64],
) -> Option<Division> {
    let dp = dense_exponents(p, &bp.positions);
    let dd = dense_exponents(d, &bd.positions);
    let dense = DenseBox::new(&dp, &dd, ranges, p.len().max(d.len()).saturating_mul(64))?;
    let coeffs = |t: &BTreeMap<Mono, BigInt>| -> Option<Vec<i128>> {
        t.values().map(|c| c.to_i128()).collect()
    };
    let (Some(cp), Some(cd)) = (coeffs(p), coeffs(d)) else {
        return Some(Division::Unsupported);
    };
    let mut div: Vec<(usize, i128, usize)> = dd
        .iter()
        .zip(&cd)
        .enumerate()
        .map(|(j, (e, &c))| (dense.index(e, &bd.min), c, j))
        .collect();
    div.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
    let (lead_idx, lead_c, lead_j) = div[0];
    let rest = &div[1..];

    const FROM_P: u64 = 1 << 63;
    let mut rem = vec![0i128; dense.len];
    let mut witness = vec![0u64; dense.len];
    for (i, (e, &c)) in dp.iter().zip(&cp).enumerate() {
        let idx = dense.index(e, &bp.min);
        rem[idx] = c;
        witness[idx] = FROM_P | i as u64;
    }
    let mp: Vec<&Mono> = p.keys().collect();
    let md: Vec<&Mono> = d.keys().collect();
    let lead_inv = md[lead_j].inv();
    let mut quotient: Vec<(Mono, BigInt)> = Vec::new();
    for idx in (0..dense.len).rev() {
        let c = rem[idx];
        if c == 0 {
            continue;
        }
        if idx < lead_idx || c % lead_c != 0 {
            return Some(Division::NotDivisible);
        }
        let fits = dense.coords.iter().enumerate().all(|(k, &i)| {
            let (a, b) = (dense.digit(idx, k), dense.digit(lead_idx, k));
            a >= b && (a - b) as i64 <= q_ranges[i]
        });
        if !fits {
            return Some(Division::NotDivisible);
        }
        let q_idx = idx - lead_idx;
        let qc = c / lead_c;
        let w = witness[idx];
        let full = if w & FROM_P != 0 {
            mp[(w & !FROM_P) as usize].clone()
        } else {
            let (qi, dj) = ((w >> 32) as usize, (w & 0xffff_ffff) as usize);
            &quotient[qi].0 * md[dj]
        };
        let qi = quotient.len() as u64;
        quotient.push((&full * &lead_inv, BigInt::from(qc)));
        for &(di, dc, dj) in rest {
            let slot = &mut rem[q_idx + di];
            if *slot == 0 {
                witness[q_idx + di] = (qi << 32) | dj as u64;
            }
            let prod = qc.checked_mul(dc)?;
            *slot = slot.checked_sub(prod)?;
        }
    }
    quotient.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Some(Division::Exact(quotient.into_iter().collect()))
}

/// Ordered division of one homogeneous remainder layer by the top
/// homogeneous component of the divisor.
struct LayerDivision<'a> {
    layout: &'a Layout,
    q_ranges: &'a [i64],
    divisor: &'a [(u128, i128)],
}

impl LayerDivision<'_> {
    /// `p` must be sorted in decreasing key order. The quotient must clear
    /// `p` completely.
    fn run(&self, p: &[(u128, i128)]) -> std::result::Result<Vec<(u128, i128)>, Division> {
        let dd = self.divisor;
        let (lead_key, lead_c) = dd[0];
        let mut quotient: Vec<(u128, i128)> = Vec::new();
        let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
        let mut next_p = 0;
        loop {
            let key = match (p.get(next_p), heap.peek()) {
                (None, None) => break,
                (Some(&(k, _)), None) => k,
                (None, Some(e)) => e.key,
                (Some(&(k, _)), Some(e)) => k.max(e.key),
            };
            let mut c: i128 = 0;
            if p.get(next_p).is_some_and(|&(k, _)| k == key) {
                c = p[next_p].1;
                next_p += 1;
            }
            while let Some(mut top) = heap.peek_mut() {
                if top.key != key {
                    break;
                }
                let (qk, qc) = quotient[top.quotient as usize];
                let prod = qc
                    .checked_mul(dd[top.divisor as usize].1)
                    .ok_or(Division::Unsupported)?;
                c = c.checked_sub(prod).ok_or(Division::Unsupported)?;
                let j = top.divisor as usize + 1;
                if j < dd.len() {
                    top.key = qk + dd[j].0;
                    top.divisor = j as u32;
                } else {
                    std::collections::binary_heap::PeekMut::pop(top);
                }
            }
            if c == 0 {
                continue;
            }
            if c % lead_c != 0 {
                return Err(Division::NotDivisible);
            }
            let fits = (0..self.q_ranges.len()).all(|i| {
                let f = self.layout.field(key, i) - self.layout.field(lead_key, i);
                (0..=self.q_ranges[i]).contains(&f)
            });
            if !fits {
                return Err(Division::NotDivisible);
            }
            let qk = key - lead_key;
            let idx = quotient.len() as u32;
            quotient.push((qk, c / lead_c));
            if dd.len() > 1 {
                heap.push(HeapEntry {
                    key: qk + dd[1].0,
                    quotient: idx,
                    divisor: 1,
                });
            }
        }
        Ok(quotient)
    }
}
