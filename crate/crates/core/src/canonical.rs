//! Full canonicity: canonical forms, canonicity and equivalence tests, and
//! equivalence-class counting.
//!
//! Two matrices are equivalent when one is a row/column rearrangement of the
//! other. The canonical representative of a class is the member whose
//! row-code tuple is the lexicographic minimum over the whole orbit. Row
//! codes alone settle it; the matching column-side minimality that one might
//! expect does not hold in general (the acceptance suite exhibits the 3x3
//! counterexamples), so nothing here relies on it.
//!
//! The search only ranges over column orderings: once the columns are fixed,
//! sorting the rows ascending is the best any row permutation can do, which
//! removes a factor of `n!`. Column orderings are built left to right with a
//! branch-and-bound cut against the best complete candidate found so far.
//! The `m!` worst case is kept behind an explicit budget.

use crate::codec::{BinMatrix, RowTuple};
use crate::semicanon::{self, RegularSpec};
use crate::{Error, Result};

/// Columns the canonical search accepts before refusing; see
/// [`canonical_form_with_budget`] to override.
pub const DEFAULT_COLUMN_BUDGET: usize = 10;

/// Bijection on `0..len`, stored as the image sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let len = map.len();
        if len == 0 {
            return Err(Error::InvalidArgument("empty permutation".into()));
        }
        let mut seen = vec![false; len];
        for &v in &map {
            if v >= len || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "not a bijection on 0..{len}: {map:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(len: usize) -> Self {
        Permutation {
            map: (0..len).collect(),
        }
    }

    /// The permutation swapping `u` and `v`, fixing everything else.
    pub fn transposition(len: usize, u: usize, v: usize) -> Result<Self> {
        if u >= len || v >= len || u == v {
            return Err(Error::InvalidArgument(format!(
                "transposition needs two distinct indices below {len}"
            )));
        }
        let mut map: Vec<usize> = (0..len).collect();
        map.swap(u, v);
        Ok(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        false // validated permutations are never empty
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }
}

/// Rearranged matrix: entry `(i, j)` of the result is entry
/// `(rowp[i], colp[j])` of the input.
pub fn apply_perms(a: &BinMatrix, rowp: &Permutation, colp: &Permutation) -> Result<BinMatrix> {
    if rowp.len() != a.n() || colp.len() != a.m() {
        return Err(Error::InvalidArgument(format!(
            "permutation lengths {}/{} do not match matrix {}x{}",
            rowp.len(),
            colp.len(),
            a.n(),
            a.m()
        )));
    }
    let m = a.m();
    let rows: Vec<u64> = rowp
        .as_slice()
        .iter()
        .map(|&src| {
            let code = a.row_code(src);
            colp.as_slice()
                .iter()
                .fold(0u64, |acc, &cj| (acc << 1) | ((code >> (m - 1 - cj)) & 1))
        })
        .collect();
    BinMatrix::from_rows(rows, m)
}

/// Alternates row sorting and column sorting until neither changes the
/// matrix. The result is semi-canonical and equivalent to the input.
///
/// Each row-sort pass that changes anything strictly decreases the
/// column-code tuple, and symmetrically for column passes, so the loop
/// cannot revisit a state.
pub fn sort_normalize(a: &BinMatrix) -> BinMatrix {
    let mut cur = a.clone();
    loop {
        let rows_changed;
        {
            let sorted = sort_rows(&cur);
            rows_changed = sorted != cur;
            cur = sorted;
        }
        let cols_changed;
        {
            let sorted = sort_cols(&cur);
            cols_changed = sorted != cur;
            cur = sorted;
        }
        if !rows_changed && !cols_changed {
            return cur;
        }
    }
}

fn sort_rows(a: &BinMatrix) -> BinMatrix {
    let mut rows = a.codes().to_vec();
    rows.sort_unstable();
    BinMatrix::from_rows(rows, a.m()).expect("sorting preserves validity")
}

fn sort_cols(a: &BinMatrix) -> BinMatrix {
    sort_rows(&a.transpose()).transpose()
}

/// The canonical form under the default column budget.
pub fn canonical_form(a: &BinMatrix) -> Result<BinMatrix> {
    canonical_form_with_budget(a, DEFAULT_COLUMN_BUDGET)
}

/// The member of the orbit of `a` with the smallest row-code tuple.
/// Refuses when `a` has more columns than `budget`.
pub fn canonical_form_with_budget(a: &BinMatrix, budget: usize) -> Result<BinMatrix> {
    if a.m() > budget {
        return Err(Error::FactorialBudget { m: a.m(), budget });
    }
    // Start from a cheap orbit member; the search can only improve on it.
    let seed = sort_normalize(a);
    let mut search = ColumnSearch::new(a);
    search.best = seed.codes().to_vec();
    search.run(false);
    BinMatrix::from_rows(search.best, a.m())
}

/// Whether `a` is the canonical member of its orbit.
pub fn is_canonical(a: &BinMatrix) -> Result<bool> {
    is_canonical_with_budget(a, DEFAULT_COLUMN_BUDGET)
}

pub fn is_canonical_with_budget(a: &BinMatrix, budget: usize) -> Result<bool> {
    if a.m() > budget {
        return Err(Error::FactorialBudget { m: a.m(), budget });
    }
    // A canonical matrix is semi-canonical: an unsorted row or column order
    // hands an immediate improvement to the corresponding sort.
    if !semicanon::is_semicanonical(&a.row_codes()) {
        return Ok(false);
    }
    let mut search = ColumnSearch::new(a);
    search.best = a.codes().to_vec();
    let improved = search.run(true);
    Ok(!improved)
}

/// Equivalence test: equal canonical forms. Different shapes are never
/// equivalent.
pub fn are_equivalent(a: &BinMatrix, b: &BinMatrix) -> Result<bool> {
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Branch and bound over column orderings. At depth `t` the first `t` output
/// columns are chosen and every row carries a `t`-bit prefix; sorting those
/// prefixes gives the first `t` bits of the row tuple any completion of this
/// branch can reach. A branch whose sorted prefixes already exceed the best
/// candidate is dead. Ties are explored.
struct ColumnSearch {
    /// Column codes of the input, one per original column, top row as the
    /// most significant bit.
    col_codes: Vec<u64>,
    n: usize,
    m: usize,
    best: Vec<u64>,
}

impl ColumnSearch {
    fn new(a: &BinMatrix) -> Self {
        ColumnSearch {
            col_codes: a.col_codes().codes().to_vec(),
            n: a.n(),
            m: a.m(),
            best: Vec::new(),
        }
    }

    /// Explores all column orderings. Returns true when some candidate beats
    /// the initial `best`; with `stop_on_improvement` the search exits at the
    /// first strict improvement.
    fn run(&mut self, stop_on_improvement: bool) -> bool {
        let mut chosen = vec![false; self.m];
        let mut prefixes = vec![0u64; self.n];
        self.descend(0, &mut chosen, &mut prefixes, stop_on_improvement)
    }

    fn descend(
        &mut self,
        depth: usize,
        chosen: &mut [bool],
        prefixes: &mut Vec<u64>,
        stop_on_improvement: bool,
    ) -> bool {
        if depth == self.m {
            let mut candidate = prefixes.clone();
            candidate.sort_unstable();
            if candidate < self.best {
                self.best = candidate;
                return true;
            }
            return false;
        }
        let mut improved = false;
        for j in 0..self.m {
            if chosen[j] {
                continue;
            }
            let col = self.col_codes[j];
            // Identical unchosen columns produce identical subtrees; branch
            // on the first of each group only.
            if self.col_codes[..j]
                .iter()
                .zip(chosen.iter())
                .any(|(&earlier, &taken)| !taken && earlier == col)
            {
                continue;
            }
            let mut next: Vec<u64> = prefixes
                .iter()
                .enumerate()
                .map(|(i, &p)| (p << 1) | ((col >> (self.n - 1 - i)) & 1))
                .collect();
            let mut sorted = next.clone();
            sorted.sort_unstable();
            // Bound test: the cheapest completion of this branch is the
            // sorted prefixes with all-zero low bits. Compare that bound
            // against the best tuple, whose own prefixes line up with its
            // sorted codes. A tie on the prefix with nonzero low bits in
            // the best code means the bound is already strictly below the
            // best, so the branch must stay alive.
            let shift = self.m - depth - 1;
            let low_mask = if shift == 0 { 0 } else { (1u64 << shift) - 1 };
            let bound_exceeds_best = sorted.iter().zip(self.best.iter()).find_map(|(&cand, &b)| {
                let bp = b >> shift;
                if cand != bp {
                    Some(cand > bp)
                } else if b & low_mask != 0 {
                    Some(false)
                } else {
                    None
                }
            });
            if bound_exceeds_best == Some(true) {
                continue;
            }
            chosen[j] = true;
            std::mem::swap(prefixes, &mut next);
            if self.descend(depth + 1, chosen, prefixes, stop_on_improvement) {
                improved = true;
            }
            std::mem::swap(prefixes, &mut next);
            chosen[j] = false;
            if improved && stop_on_improvement {
                return true;
            }
        }
        improved
    }
}

/// Classification result for one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonReport {
    /// Number of equivalence classes (canonical members).
    pub classes: u64,
    /// Number of semi-canonical members.
    pub semi_canonical: u64,
    /// Canonical representatives in ascending row-tuple order, when asked
    /// for.
    pub representatives: Option<Vec<RowTuple>>,
}

/// Counts equivalence classes by filtering the semi-canonical stream down to
/// its canonical members. Every class has exactly one canonical member and
/// that member is semi-canonical, so the stream covers all classes.
pub fn count_classes(spec: &RegularSpec) -> Result<CanonReport> {
    count_classes_with(spec, DEFAULT_COLUMN_BUDGET, false, 1)
}

/// As [`count_classes`], with an explicit column budget, optional collection
/// of the representatives, and a worker count for the filtering step.
pub fn count_classes_with(
    spec: &RegularSpec,
    budget: usize,
    collect: bool,
    workers: usize,
) -> Result<CanonReport> {
    if spec.n() > budget {
        return Err(Error::FactorialBudget {
            m: spec.n(),
            budget,
        });
    }
    let workers = workers.max(1);
    let (tuples, report) = semicanon::semicanonical_tuples(spec, workers);

    let flags: Vec<bool> = if workers == 1 {
        tuples
            .iter()
            .map(|t| is_canonical_with_budget(&t.to_matrix(), budget))
            .collect::<Result<_>>()?
    } else {
        // Hand out tuples one at a time: the expensive full-proof searches
        // (the canonical members) cluster at the low end of the stream, so
        // fixed chunks would starve all but one worker.
        use std::sync::atomic::{AtomicUsize, Ordering};
        let next = AtomicUsize::new(0);
        let mut flags = vec![false; tuples.len()];
        let mut failure: Option<Error> = None;
        let mut outcomes: Vec<(usize, bool)> = Vec::with_capacity(tuples.len());
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for _ in 0..workers {
                let next = &next;
                let tuples = &tuples;
                handles.push(scope.spawn(move || -> Result<Vec<(usize, bool)>> {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= tuples.len() {
                            return Ok(local);
                        }
                        local.push((i, is_canonical_with_budget(&tuples[i].to_matrix(), budget)?));
                    }
                }));
            }
            for h in handles {
                match h.join().expect("classification worker panicked") {
                    Ok(local) => outcomes.extend(local),
                    Err(e) => failure = Some(e),
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        for (i, f) in outcomes {
            flags[i] = f;
        }
        flags
    };

    let classes = flags.iter().filter(|&&f| f).count() as u64;
    let representatives = collect.then(|| {
        tuples
            .iter()
            .zip(&flags)
            .filter(|&(_, &f)| f)
            .map(|(t, _)| t.clone())
            .collect()
    });
    Ok(CanonReport {
        classes,
        semi_canonical: report.count,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{parse_matrix, MatrixStyle};
    use crate::oracle::{self, Grid, OracleBudget};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn grid(text: &str) -> BinMatrix {
        parse_matrix(text, MatrixStyle::BitGrid).unwrap()
    }

    fn example_a() -> BinMatrix {
        grid("0111\n1001\n1010\n1110")
    }

    fn example_b() -> BinMatrix {
        grid("0011\n0101\n1101\n1110")
    }

    fn random_matrix(rng: &mut StdRng, n: usize, m: usize) -> BinMatrix {
        let rows: Vec<u64> = (0..n).map(|_| rng.random_range(0..(1u64 << m))).collect();
        BinMatrix::from_rows(rows, m).unwrap()
    }

    fn random_perm(rng: &mut StdRng, len: usize) -> Permutation {
        let mut map: Vec<usize> = (0..len).collect();
        for i in (1..len).rev() {
            map.swap(i, rng.random_range(0..=i));
        }
        Permutation::new(map).unwrap()
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::transposition(3, 1, 1).is_err());
    }

    #[test]
    fn apply_perms_identity_and_swap() {
        let a = example_a();
        let id4 = Permutation::identity(4);
        assert_eq!(apply_perms(&a, &id4, &id4).unwrap(), a);

        // Swapping two rows moves exactly those rows.
        let swap = Permutation::transposition(4, 1, 2).unwrap();
        let swapped = apply_perms(&a, &swap, &id4).unwrap();
        assert_eq!(swapped.codes(), &[7, 10, 9, 14]);

        let id3 = Permutation::identity(3);
        assert!(apply_perms(&a, &id3, &id4).is_err());
    }

    #[test]
    fn example_pair_related_by_some_rearrangement() {
        // Exhaustive 4! * 4! search for a witness pair.
        let a = example_a();
        let b = example_b();
        let mut found = false;
        let perms: Vec<Vec<usize>> = {
            let mut out = Vec::new();
            let mut map = [0usize; 4];
            fn build(
                depth: usize,
                used: &mut [bool; 4],
                map: &mut [usize; 4],
                out: &mut Vec<Vec<usize>>,
            ) {
                if depth == 4 {
                    out.push(map.to_vec());
                    return;
                }
                for v in 0..4 {
                    if !used[v] {
                        used[v] = true;
                        map[depth] = v;
                        build(depth + 1, used, map, out);
                        used[v] = false;
                    }
                }
            }
            build(0, &mut [false; 4], &mut map, &mut out);
            out
        };
        'outer: for rp in &perms {
            for cp in &perms {
                let rowp = Permutation::new(rp.clone()).unwrap();
                let colp = Permutation::new(cp.clone()).unwrap();
                if apply_perms(&b, &rowp, &colp).unwrap() == a {
                    found = true;
                    break 'outer;
                }
            }
        }
        assert!(
            found,
            "no rearrangement maps the second example onto the first"
        );
    }

    #[test]
    fn sort_normalize_behavior() {
        let a = example_a();
        // Already semi-canonical: fixpoint.
        assert_eq!(sort_normalize(&a), a);
        // Reversed rows: one row sort restores the original.
        let reversed = BinMatrix::from_rows(vec![14, 10, 9, 7], 4).unwrap();
        assert_eq!(sort_normalize(&reversed), a);

        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.random_range(1..=6);
            let m = rng.random_range(1..=6);
            let x = random_matrix(&mut rng, n, m);
            let s = sort_normalize(&x);
            assert!(semicanon::is_semicanonical(&s.row_codes()));
            // Same multiset of entries per invariant: total weight preserved.
            let weight = |a: &BinMatrix| a.codes().iter().map(|x| x.count_ones()).sum::<u32>();
            assert_eq!(weight(&s), weight(&x));
        }
    }

    #[test]
    fn sort_pass_measures_strictly_decrease() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..2000 {
            let n = rng.random_range(1..=6);
            let m = rng.random_range(1..=6);
            let x = random_matrix(&mut rng, n, m);
            let rowed = sort_rows(&x);
            if rowed != x {
                assert!(
                    rowed.col_codes().codes() < x.col_codes().codes(),
                    "row sort failed to shrink the column tuple for {x:?}"
                );
            }
            let coled = sort_cols(&x);
            if coled != x {
                assert!(coled.codes() < x.codes());
            }
        }
    }

    #[test]
    fn canonical_form_on_example_pair() {
        let a = example_a();
        let b = example_b();
        let ca = canonical_form(&a).unwrap();
        let cb = canonical_form(&b).unwrap();
        assert_eq!(ca, cb);
        // The second member bounds the minimum from above.
        assert!(ca.codes() <= &[3, 5, 13, 14][..]);
        // Exhaustive orbit minimum agrees.
        let oracle_min =
            oracle::orbit_row_min(&Grid::from_matrix(&a), &OracleBudget::default()).unwrap();
        assert_eq!(ca.codes(), &oracle_min[..]);

        let ones = BinMatrix::from_rows(vec![7, 7, 7], 3).unwrap();
        assert_eq!(canonical_form(&ones).unwrap(), ones);
    }

    #[test]
    fn canonical_form_matches_oracle_on_random_matrices() {
        let mut rng = StdRng::seed_from_u64(13);
        let budget = OracleBudget::default();
        for _ in 0..200 {
            let x = random_matrix(&mut rng, 4, 4);
            let fast = canonical_form(&x).unwrap();
            let slow = oracle::orbit_row_min(&Grid::from_matrix(&x), &budget).unwrap();
            assert_eq!(fast.codes(), &slow[..], "input {x:?}");
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_orbit_constant() {
        let mut rng = StdRng::seed_from_u64(14);
        for _ in 0..200 {
            let n = rng.random_range(1..=5);
            let m = rng.random_range(1..=5);
            let x = random_matrix(&mut rng, n, m);
            let c = canonical_form(&x).unwrap();
            assert_eq!(canonical_form(&c).unwrap(), c);
            let shuffled =
                apply_perms(&x, &random_perm(&mut rng, n), &random_perm(&mut rng, m)).unwrap();
            assert_eq!(canonical_form(&shuffled).unwrap(), c);
        }
    }

    #[test]
    fn canonicity_judgements() {
        // The first example member is semi-canonical but beaten by the
        // second inside its own orbit.
        assert!(!is_canonical(&example_a()).unwrap());
        let ones = BinMatrix::from_rows(vec![3, 3], 2).unwrap();
        assert!(is_canonical(&ones).unwrap());

        // Both weight-2 semi-canonical members of order 4 are canonical.
        for rows in [vec![3, 3, 12, 12], vec![3, 5, 10, 12]] {
            let m = BinMatrix::from_rows(rows, 4).unwrap();
            assert!(is_canonical(&m).unwrap());
        }
    }

    #[test]
    fn equivalence_judgements() {
        let a = example_a();
        let b = example_b();
        assert!(are_equivalent(&a, &b).unwrap());
        assert!(are_equivalent(&a, &a).unwrap());
        let ones3 = BinMatrix::from_rows(vec![7, 7, 7], 3).unwrap();
        let member = BinMatrix::from_rows(vec![3, 5, 6], 3).unwrap();
        assert!(!are_equivalent(&ones3, &member).unwrap());
        let rect = BinMatrix::from_rows(vec![1, 2], 2).unwrap();
        assert!(!are_equivalent(&a, &rect).unwrap());
    }

    #[test]
    fn budget_is_enforced_and_named() {
        let wide = BinMatrix::from_rows(vec![1; 3], 11).unwrap();
        let err = canonical_form(&wide).unwrap_err();
        assert!(matches!(err, Error::FactorialBudget { m: 11, budget: 10 }));
        assert!(err.to_string().contains("10"));
        assert!(canonical_form_with_budget(&wide, 11).is_ok());
    }

    #[test]
    fn class_counts_for_small_families() {
        let spec = |n, k| RegularSpec::new(n, k).unwrap();
        let r = count_classes(&spec(3, 2)).unwrap();
        assert_eq!((r.classes, r.semi_canonical), (1, 1));

        let r = count_classes_with(&spec(4, 2), DEFAULT_COLUMN_BUDGET, true, 1).unwrap();
        assert_eq!((r.classes, r.semi_canonical), (2, 2));
        let reps = r.representatives.unwrap();
        assert_eq!(reps.len(), 2);
        for t in &reps {
            assert!(is_canonical(&t.to_matrix()).unwrap());
        }

        for k in 1..=4usize {
            let r = count_classes(&spec(k.max(1), k)).unwrap();
            assert_eq!(r.classes, 1);
        }

        // Workers only change the schedule, not the counts.
        let seq = count_classes_with(&spec(5, 2), DEFAULT_COLUMN_BUDGET, true, 1).unwrap();
        let par = count_classes_with(&spec(5, 2), DEFAULT_COLUMN_BUDGET, true, 3).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.classes, 2);
        assert!(seq.classes <= seq.semi_canonical);
    }

    #[test]
    fn class_counts_match_oracle_ground_truth() {
        // The widest weight-2/3 order-5 families live in the acceptance
        // suite; everything else small is cheap enough to sweep here.
        let budget = OracleBudget::default();
        let mut cells: Vec<(usize, usize)> = Vec::new();
        for n in 1..=4usize {
            cells.extend((1..=n).map(|k| (n, k)));
        }
        cells.extend([(5, 1), (5, 4), (5, 5)]);
        for (n, k) in cells {
            let sp = RegularSpec::new(n, k).unwrap();
            let fast = count_classes(&sp).unwrap();
            let slow = oracle::oracle_report(&sp, &budget).unwrap();
            assert_eq!(fast.classes, slow.classes, "n={n} k={k}");
            assert_eq!(fast.semi_canonical, slow.semi_canonical, "n={n} k={k}");
        }
    }

    #[test]
    fn transposition_that_lowers_rows_lowers_columns() {
        // Row-swap trials: whenever the swap lowers the row tuple it must
        // lower the column tuple.
        let mut rng = StdRng::seed_from_u64(15);
        let mut checked = 0;
        while checked < 2000 {
            let n = rng.random_range(2..=8);
            let m = rng.random_range(1..=8);
            let a = random_matrix(&mut rng, n, m);
            let u = rng.random_range(0..n - 1);
            let v = rng.random_range(u + 1..n);
            let x = Permutation::transposition(n, u, v).unwrap();
            let xa = apply_perms(&a, &x, &Permutation::identity(m)).unwrap();
            if xa.codes() < a.codes() {
                assert!(
                    xa.col_codes().codes() < a.col_codes().codes(),
                    "a={a:?} swap {u},{v}"
                );
                checked += 1;
            }
        }
    }

    #[test]
    fn descending_chains_lower_columns() {
        let mut rng = StdRng::seed_from_u64(16);
        let mut built = 0;
        'outer: while built < 300 {
            let n = rng.random_range(2..=7);
            let m = rng.random_range(1..=7);
            let start = random_matrix(&mut rng, n, m);
            let steps = rng.random_range(1..=4);
            let mut cur = start.clone();
            for _ in 0..steps {
                // Find a transposition strictly lowering the row tuple.
                let mut placed = false;
                for _ in 0..64 {
                    let u = rng.random_range(0..n - 1);
                    let v = rng.random_range(u + 1..n);
                    let x = Permutation::transposition(n, u, v).unwrap();
                    let next = apply_perms(&cur, &x, &Permutation::identity(m)).unwrap();
                    if next.codes() < cur.codes() {
                        cur = next;
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    continue 'outer; // start matrix too close to row-minimal
                }
            }
            assert!(cur.col_codes().codes() < start.col_codes().codes());
            built += 1;
        }
    }
}
