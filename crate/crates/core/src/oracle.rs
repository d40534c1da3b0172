//! Brute-force ground truth for small sizes.
//!
//! Everything here is re-derived from first principles on an explicit cell
//! grid (plain loops, decimal accumulation instead of bit tricks, its own
//! permutation generator) and deliberately shares no generation code with
//! the fast modules. Slowness is fine; agreeing with this module is what the
//! fast path has to earn.

use crate::codec::BinMatrix;
use crate::semicanon::RegularSpec;
use crate::{Error, Result};
use std::collections::HashSet;

/// Size limits for the oracle. Exhaustive orbit work grows as `n! * m!`,
/// full-family enumeration roughly as `C(n,k)^n`, so the defaults are small;
/// construct a custom budget to push past them deliberately.
#[derive(Copy, Clone, Debug)]
pub struct OracleBudget {
    /// Largest order accepted by full-family enumeration.
    pub max_enum_n: usize,
    /// Largest dimension accepted by exhaustive orbit minimization.
    pub max_orbit_n: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_enum_n: 6,
            max_orbit_n: 5,
        }
    }
}

/// Matrix as a plain cell grid, the oracle's own representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    cells: Vec<Vec<u8>>,
}

impl Grid {
    pub fn from_cells(cells: Vec<Vec<u8>>) -> Result<Self> {
        if cells.is_empty() || cells[0].is_empty() {
            return Err(Error::InvalidArgument(
                "grid needs at least one cell".into(),
            ));
        }
        let m = cells[0].len();
        for row in &cells {
            if row.len() != m {
                return Err(Error::InvalidArgument("ragged grid".into()));
            }
            if row.iter().any(|&c| c > 1) {
                return Err(Error::InvalidArgument("grid cells must be 0 or 1".into()));
            }
        }
        Ok(Grid { cells })
    }

    /// Bridge from the fast representation, reading entries one by one
    /// through the public accessor.
    pub fn from_matrix(a: &BinMatrix) -> Self {
        let cells = (0..a.n())
            .map(|i| (0..a.m()).map(|j| a.bit(i, j)).collect())
            .collect();
        Grid { cells }
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn cols(&self) -> usize {
        self.cells[0].len()
    }

    pub fn cell(&self, i: usize, j: usize) -> u8 {
        self.cells[i][j]
    }

    /// Row codes by decimal accumulation: leftmost cell weighs most.
    pub fn row_codes(&self) -> Vec<u64> {
        self.cells
            .iter()
            .map(|row| row.iter().fold(0u64, |acc, &c| acc * 2 + c as u64))
            .collect()
    }

    /// Column codes, top cell weighing most.
    pub fn col_codes(&self) -> Vec<u64> {
        (0..self.cols())
            .map(|j| (0..self.rows()).fold(0u64, |acc, i| acc * 2 + self.cells[i][j] as u64))
            .collect()
    }

    pub fn is_semicanonical(&self) -> bool {
        nondecreasing(&self.row_codes()) && nondecreasing(&self.col_codes())
    }

    /// Grid with row `i` taken from row `rp[i]` and column `j` from `cp[j]`.
    pub fn permuted(&self, rp: &[usize], cp: &[usize]) -> Grid {
        let mut cells = vec![vec![0u8; self.cols()]; self.rows()];
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                cells[i][j] = self.cells[rp[i]][cp[j]];
            }
        }
        Grid { cells }
    }
}

fn nondecreasing(xs: &[u64]) -> bool {
    xs.windows(2).all(|w| w[0] <= w[1])
}

/// All orderings of `0..len`, by simple recursion.
fn permutations(len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    let mut used = vec![false; len];
    fn build(
        len: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in 0..len {
            if !used[v] {
                used[v] = true;
                current.push(v);
                build(len, used, current, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    build(len, &mut used, &mut current, &mut out);
    out
}

/// Visits every member of the family exactly once, row by row, keeping
/// per-column counts to cut dead branches. Returns the member count.
pub fn enumerate_regular<F: FnMut(&Grid)>(
    spec: &RegularSpec,
    budget: &OracleBudget,
    mut visit: F,
) -> Result<u64> {
    let n = spec.n();
    let k = spec.k();
    if n > budget.max_enum_n {
        return Err(Error::OracleBudget {
            n,
            budget: budget.max_enum_n,
            task: "enumeration",
        });
    }

    // Every 0/1 row of length n with exactly k ones, by filtering all rows.
    let mut candidates: Vec<Vec<u8>> = Vec::new();
    let mut row = vec![0u8; n];
    loop {
        if row.iter().map(|&c| c as usize).sum::<usize>() == k {
            candidates.push(row.clone());
        }
        // Odometer step over the 2^n rows.
        let mut pos = n;
        while pos > 0 && row[pos - 1] == 1 {
            row[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        row[pos - 1] = 1;
    }

    let mut cells: Vec<Vec<u8>> = Vec::with_capacity(n);
    let mut col_counts = vec![0usize; n];
    let mut count = 0u64;

    fn place<F: FnMut(&Grid)>(
        candidates: &[Vec<u8>],
        n: usize,
        k: usize,
        cells: &mut Vec<Vec<u8>>,
        col_counts: &mut Vec<usize>,
        count: &mut u64,
        visit: &mut F,
    ) {
        if cells.len() == n {
            *count += 1;
            visit(&Grid {
                cells: cells.clone(),
            });
            return;
        }
        let remaining = n - cells.len();
        'next: for cand in candidates {
            for j in 0..n {
                let c = col_counts[j] + cand[j] as usize;
                if c > k || k - c > remaining - 1 {
                    continue 'next;
                }
            }
            for j in 0..n {
                col_counts[j] += cand[j] as usize;
            }
            cells.push(cand.clone());
            place(candidates, n, k, cells, col_counts, count, visit);
            cells.pop();
            for j in 0..n {
                col_counts[j] -= cand[j] as usize;
            }
        }
    }

    place(
        &candidates,
        n,
        k,
        &mut cells,
        &mut col_counts,
        &mut count,
        &mut visit,
    );
    Ok(count)
}

/// Smallest row-code tuple over the whole orbit: min over all row and column
/// orderings.
pub fn orbit_row_min(g: &Grid, budget: &OracleBudget) -> Result<Vec<u64>> {
    let n = g.rows().max(g.cols());
    if n > budget.max_orbit_n {
        return Err(Error::OracleBudget {
            n,
            budget: budget.max_orbit_n,
            task: "orbit",
        });
    }
    let row_perms = permutations(g.rows());
    let col_perms = permutations(g.cols());
    let mut best: Option<Vec<u64>> = None;
    for rp in &row_perms {
        for cp in &col_perms {
            let codes = g.permuted(rp, cp).row_codes();
            if best.as_ref().is_none_or(|b| codes < *b) {
                best = Some(codes);
            }
        }
    }
    Ok(best.expect("orbit is never empty"))
}

/// Smallest column-code tuple over the whole orbit.
pub fn orbit_col_min(g: &Grid, budget: &OracleBudget) -> Result<Vec<u64>> {
    let n = g.rows().max(g.cols());
    if n > budget.max_orbit_n {
        return Err(Error::OracleBudget {
            n,
            budget: budget.max_orbit_n,
            task: "orbit",
        });
    }
    let row_perms = permutations(g.rows());
    let col_perms = permutations(g.cols());
    let mut best: Option<Vec<u64>> = None;
    for rp in &row_perms {
        for cp in &col_perms {
            let codes = g.permuted(rp, cp).col_codes();
            if best.as_ref().is_none_or(|b| codes < *b) {
                best = Some(codes);
            }
        }
    }
    Ok(best.expect("orbit is never empty"))
}

/// Ground-truth statistics for one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// Family size.
    pub total: u64,
    /// Semi-canonical members, found by filtering the whole family.
    pub semi_canonical: u64,
    /// Equivalence classes, counted as distinct orbit minima.
    pub classes: u64,
    /// `semi_canonical / total` as a reduced fraction.
    pub ratio: (u64, u64),
}

/// Runs the full family through the semi-canonical filter and the orbit
/// minimizer. Needs both budgets since it enumerates and minimizes.
pub fn oracle_report(spec: &RegularSpec, budget: &OracleBudget) -> Result<OracleReport> {
    if spec.n() > budget.max_orbit_n {
        return Err(Error::OracleBudget {
            n: spec.n(),
            budget: budget.max_orbit_n,
            task: "orbit",
        });
    }
    let mut semi = 0u64;
    let mut minima: HashSet<Vec<u64>> = HashSet::new();
    let mut failure = None;
    let total = enumerate_regular(spec, budget, |g| {
        if g.is_semicanonical() {
            semi += 1;
        }
        match orbit_row_min(g, budget) {
            Ok(min) => {
                minima.insert(min);
            }
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    // total >= 1, so the gcd is never zero.
    let d = gcd(semi, total);
    Ok(OracleReport {
        total,
        semi_canonical: semi,
        classes: minima.len() as u64,
        ratio: (semi / d, total / d),
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
