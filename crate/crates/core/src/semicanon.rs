//! Generation of the semi-canonical members of a regular matrix family.
//!
//! The family is the set of `n * n` binary matrices with exactly `k` ones in
//! every row and every column. A matrix is *semi-canonical* when its row-code
//! tuple and its column-code tuple are both nondecreasing; every equivalence
//! class under row/column permutation contains at least one semi-canonical
//! member, so enumerating them is the cheap outer reduction before full
//! canonicity filtering.
//!
//! The generator walks nondecreasing `n`-tuples over the sorted list of
//! weight-`k` row codes instead of walking the whole family:
//!
//! * the first row is pinned to the smallest weight-`k` code `2^k - 1`:
//!   in any semi-canonical member the first row must read `0...01...1`,
//!   because a `1` left of a `0` in the top row would order those two
//!   columns descendingly;
//! * while extending a prefix, per-column one-counts rule out any row that
//!   overfills a column (`count > k`) or starves one (`k - count` exceeding
//!   the rows still to be placed). Both conditions compress into two word
//!   masks, so testing a candidate row is O(1);
//! * the column condition that is not prefix-monotone (column codes
//!   nondecreasing) is checked only on complete tuples.
//!
//! Completed tuples always have exact column sums `k`: the prefix rules keep
//! every count at most `k` while the `n * k` total forces equality.

use crate::bitcore::{binomial, k_subset_codes, popcount, Code, MAX_WIDTH};
use crate::codec::RowTuple;
use crate::{Error, Result};
use num_bigint::BigUint;
use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};

/// Parameters of one regular family: `n * n` matrices, `k` ones per line.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularSpec {
    n: usize,
    k: usize,
}

impl RegularSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidArgument(
                "matrix order and line weight must be positive".into(),
            ));
        }
        if n > MAX_WIDTH {
            return Err(Error::InvalidArgument(format!(
                "order {n} exceeds the {MAX_WIDTH}-bit word limit"
            )));
        }
        if k > n {
            return Err(Error::InvalidArgument(format!(
                "line weight {k} exceeds order {n}"
            )));
        }
        Ok(RegularSpec { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Counters from one enumeration run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumReport {
    /// Semi-canonical matrices emitted.
    pub count: u64,
    /// Complete tuples that reached the final column-order check.
    pub visited: u64,
    /// Prefix extensions rejected by the column-count rules.
    pub pruned: u64,
    /// Size of the raw candidate space: all nondecreasing `n`-tuples over the
    /// `C(n, k)` weight-`k` codes. Exact; easily exceeds a machine word.
    pub candidate_space: BigUint,
}

impl EnumReport {
    fn empty(spec: &RegularSpec) -> Self {
        EnumReport {
            count: 0,
            visited: 0,
            pruned: 0,
            candidate_space: candidate_space_size(spec),
        }
    }

    fn absorb(&mut self, other: &EnumReport) {
        self.count += other.count;
        self.visited += other.visited;
        self.pruned += other.pruned;
        debug_assert_eq!(self.candidate_space, other.candidate_space);
    }
}

/// True when both the row codes and the column codes are nondecreasing.
pub fn is_semicanonical(t: &RowTuple) -> bool {
    t.is_nondecreasing() && t.col_codes().is_nondecreasing()
}

/// Column acceptance test for a complete tuple whose rows already have
/// weight `k`: scans columns left to right and fails fast on the first
/// column that is out of order or does not have exactly `k` ones.
pub fn check_columns(t: &RowTuple, k: usize) -> bool {
    let width = t.width();
    let mut prev = 0u64;
    for j in 0..width {
        let pos = width - 1 - j;
        let mut y = 0u64;
        for &x in t.codes() {
            y = (y << 1) | ((x >> pos) & 1);
        }
        if y < prev || popcount(y) as usize != k {
            return false;
        }
        prev = y;
    }
    true
}

/// Number of nondecreasing `n`-tuples over the `C(n, k)` weight-`k` codes:
/// `C(C(n, k) + n - 1, n)`, exact.
pub fn candidate_space_size(spec: &RegularSpec) -> BigUint {
    let c = binomial(spec.n as u64, spec.k as u64);
    big_binomial(c + spec.n as u128 - 1, spec.n as u128)
}

fn big_binomial(n: u128, k: u128) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

/// Enumerates every semi-canonical member of the family in strictly
/// ascending lexicographic order of the row tuple, invoking `visit` once per
/// member.
pub fn enumerate_semicanonical<F: FnMut(&RowTuple)>(spec: &RegularSpec, visit: F) -> EnumReport {
    let c = binomial(spec.n as u64, spec.k as u64) as usize;
    enumerate_semicanonical_range(spec, 0..c, visit)
}

/// Range-restricted enumeration: only tuples whose second row is drawn from
/// `second_row_range` (indices into the ascending weight-`k` code list) are
/// produced. The full enumeration is the disjoint union of these slices in
/// range order, which is what the parallel driver exploits.
pub fn enumerate_semicanonical_range<F: FnMut(&RowTuple)>(
    spec: &RegularSpec,
    second_row_range: Range<usize>,
    mut visit: F,
) -> EnumReport {
    let mut report = EnumReport::empty(spec);
    let n = spec.n;
    let k = spec.k;
    let codes = k_subset_codes(n, k)
        .expect("spec construction validated n and k")
        .codes;

    // First row pinned to 0...01...1, the smallest weight-k code.
    let first = codes[0];
    debug_assert_eq!(first, (1u64 << k) - 1);

    if n == 1 {
        // Single 1x1 matrix; treat it as owned by the slice holding index 0.
        if second_row_range.contains(&0) {
            report.visited = 1;
            report.count = 1;
            visit(&RowTuple::new(vec![first], 1).expect("valid 1-bit tuple"));
        }
        return report;
    }

    let mut state = DfsState {
        codes: &codes,
        n,
        k,
        counts: vec![0u32; n],
        xs: Vec::with_capacity(n),
        report,
        visit: &mut visit,
    };
    state.xs.push(first);
    for j in 0..n {
        state.counts[j] = ((first >> (n - 1 - j)) & 1) as u32;
    }
    let (full, needy) = state.masks(n - 1);

    let lo = second_row_range.start.min(codes.len());
    let hi = second_row_range.end.min(codes.len());
    state.descend(1, lo..hi, full, needy);

    state.report
}

struct DfsState<'a, F: FnMut(&RowTuple)> {
    codes: &'a [Code],
    n: usize,
    k: usize,
    counts: Vec<u32>,
    xs: Vec<Code>,
    report: EnumReport,
    visit: &'a mut F,
}

impl<F: FnMut(&RowTuple)> DfsState<'_, F> {
    /// Masks over column bit positions, given how many rows remain to be
    /// placed: `full` marks columns already holding `k` ones, `needy` marks
    /// columns that need a one in every remaining row.
    fn masks(&self, remaining: usize) -> (u64, u64) {
        let mut full = 0u64;
        let mut needy = 0u64;
        for j in 0..self.n {
            let pos = self.n - 1 - j;
            let count = self.counts[j] as usize;
            if count == self.k {
                full |= 1u64 << pos;
            }
            if self.k - count == remaining {
                needy |= 1u64 << pos;
            }
        }
        (full, needy)
    }

    fn descend(&mut self, row: usize, index_range: Range<usize>, full: u64, needy: u64) {
        let remaining_after = self.n - row - 1;
        let last_row = remaining_after == 0;
        for i in index_range.clone() {
            let x = self.codes[i];
            // A candidate row must avoid saturated columns and cover the
            // columns that cannot wait.
            if x & full != 0 || needy & !x != 0 {
                self.report.pruned += 1;
                continue;
            }
            self.xs.push(x);
            if last_row {
                self.report.visited += 1;
                if columns_nondecreasing(&self.xs, self.n) {
                    self.report.count += 1;
                    let t = RowTuple::new(self.xs.clone(), self.n)
                        .expect("generated codes fit the declared width");
                    (self.visit)(&t);
                }
            } else {
                for j in 0..self.n {
                    self.counts[j] += ((x >> (self.n - 1 - j)) & 1) as u32;
                }
                let (full2, needy2) = self.masks(remaining_after);
                self.descend(row + 1, i..self.codes.len(), full2, needy2);
                for j in 0..self.n {
                    self.counts[j] -= ((x >> (self.n - 1 - j)) & 1) as u32;
                }
            }
            self.xs.pop();
        }
    }
}

/// Column codes nondecreasing, scanning left to right. Weight checks are not
/// needed here: complete tuples always carry exact column sums.
fn columns_nondecreasing(xs: &[Code], width: usize) -> bool {
    let mut prev = 0u64;
    for j in 0..width {
        let pos = width - 1 - j;
        let mut y = 0u64;
        for &x in xs {
            y = (y << 1) | ((x >> pos) & 1);
        }
        if y < prev {
            return false;
        }
        prev = y;
    }
    true
}

/// Count of semi-canonical members, single-threaded.
pub fn semicanonical_count(spec: &RegularSpec) -> u64 {
    enumerate_semicanonical(spec, |_| {}).count
}

/// Parallel enumeration over `workers` threads. The second-row index space
/// is split into contiguous slices handed out dynamically; `visit` is called
/// from worker threads, exactly once per member, with no ordering guarantee
/// across slices. Per-slice reports are summed.
pub fn enumerate_semicanonical_parallel<F>(
    spec: &RegularSpec,
    workers: usize,
    visit: F,
) -> EnumReport
where
    F: Fn(&RowTuple) + Sync,
{
    let workers = workers.max(1);
    if workers == 1 {
        return enumerate_semicanonical(spec, |t| visit(t));
    }

    let mut report = EnumReport::empty(spec);
    let slices = second_row_slices(spec, workers);
    let next = AtomicUsize::new(0);
    let mut slice_reports: Vec<Option<EnumReport>> = vec![None; slices.len()];

    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for _ in 0..workers {
            let slices = &slices;
            let next = &next;
            let visit = &visit;
            handles.push(scope.spawn(move || {
                let mut done = Vec::new();
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= slices.len() {
                        break;
                    }
                    let r = enumerate_semicanonical_range(spec, slices[idx].clone(), |t| visit(t));
                    done.push((idx, r));
                }
                done
            }));
        }
        for handle in handles {
            for (idx, r) in handle.join().expect("enumeration worker panicked") {
                slice_reports[idx] = Some(r);
            }
        }
    });

    for r in slice_reports.into_iter().flatten() {
        report.absorb(&r);
    }
    report
}

/// Count of semi-canonical members over `workers` threads.
pub fn semicanonical_count_parallel(spec: &RegularSpec, workers: usize) -> u64 {
    enumerate_semicanonical_parallel(spec, workers, |_| {}).count
}

/// Collects the full ascending list of semi-canonical row tuples. With more
/// than one worker the slices are enumerated concurrently and concatenated
/// in slice order, which reproduces the single-threaded order exactly.
pub fn semicanonical_tuples(spec: &RegularSpec, workers: usize) -> (Vec<RowTuple>, EnumReport) {
    let workers = workers.max(1);
    if workers == 1 {
        let mut tuples = Vec::new();
        let report = enumerate_semicanonical(spec, |t| tuples.push(t.clone()));
        return (tuples, report);
    }

    let mut report = EnumReport::empty(spec);
    let slices = second_row_slices(spec, workers);
    let next = AtomicUsize::new(0);
    let mut results: Vec<Option<(Vec<RowTuple>, EnumReport)>> = vec![None; slices.len()];

    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for _ in 0..workers {
            let slices = &slices;
            let next = &next;
            handles.push(scope.spawn(move || {
                let mut done = Vec::new();
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= slices.len() {
                        break;
                    }
                    let mut tuples = Vec::new();
                    let r = enumerate_semicanonical_range(spec, slices[idx].clone(), |t| {
                        tuples.push(t.clone())
                    });
                    done.push((idx, tuples, r));
                }
                done
            }));
        }
        for handle in handles {
            for (idx, tuples, r) in handle.join().expect("enumeration worker panicked") {
                results[idx] = Some((tuples, r));
            }
        }
    });

    let mut all = Vec::new();
    for slot in results.into_iter().flatten() {
        let (tuples, r) = slot;
        all.extend(tuples);
        report.absorb(&r);
    }
    (all, report)
}

/// Contiguous slices of the second-row index space, at most `workers * 8` of
/// them. Low indices dominate the work (they leave the most room above), so
/// oversplitting plus dynamic handout keeps the threads busy.
fn second_row_slices(spec: &RegularSpec, workers: usize) -> Vec<Range<usize>> {
    let c = binomial(spec.n as u64, spec.k as u64) as usize;
    let target = (workers * 8).min(c).max(1);
    let step = c.div_ceil(target);
    let mut slices = Vec::with_capacity(target);
    let mut lo = 0;
    while lo < c {
        let hi = (lo + step).min(c);
        slices.push(lo..hi);
        lo = hi;
    }
    if slices.is_empty() {
        slices.push(0..c.max(1));
    }
    slices
}
