//! Word-level primitives: population count, bit access under the project-wide
//! bit order, and generation of all fixed-width codes with a given weight.
//!
//! Bit order convention, used everywhere in this crate: a row of width `w`
//! stores matrix column `j` (counted left to right from 0) in bit `w - 1 - j`,
//! so the leftmost column is the most significant bit. Column codes follow the
//! same rule with the top row as the most significant bit.

use crate::{Error, Result};

/// Integer standing for one matrix row or column. A code is valid for a
/// declared width `w` when `value < 2^w`; the width lives in the surrounding
/// container.
pub type Code = u64;

/// Widest supported code: one machine word.
pub const MAX_WIDTH: usize = 64;

/// Number of set bits. Compiles to a hardware popcount where the target has
/// one; [`popcount_portable`] is the independent reference implementation.
#[inline]
pub fn popcount(x: Code) -> u32 {
    x.count_ones()
}

/// Branch-free population count built from shift/mask arithmetic only.
/// Kept as a cross-check for [`popcount`].
pub fn popcount_portable(mut x: Code) -> u32 {
    x = (x & 0x5555_5555_5555_5555) + ((x >> 1) & 0x5555_5555_5555_5555);
    x = (x & 0x3333_3333_3333_3333) + ((x >> 2) & 0x3333_3333_3333_3333);
    x = (x & 0x0f0f_0f0f_0f0f_0f0f) + ((x >> 4) & 0x0f0f_0f0f_0f0f_0f0f);
    (x.wrapping_mul(0x0101_0101_0101_0101) >> 56) as u32
}

/// Bit `pos` of `x` under a declared `width`. `pos == width - 1` is the
/// leftmost matrix column, `pos == 0` the rightmost.
///
/// Panics when `pos >= width`; that is a caller bug, not an input error.
#[inline]
pub fn bit_at(x: Code, pos: usize, width: usize) -> u64 {
    assert!(
        pos < width,
        "bit position {pos} out of range for width {width}"
    );
    (x >> pos) & 1
}

/// All codes of a fixed width and weight, strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeList {
    /// Strictly ascending; every element has exactly `weight` set bits.
    pub codes: Vec<Code>,
    pub width: usize,
    pub weight: usize,
}

/// All `width`-bit codes with exactly `weight` set bits, in ascending order.
/// The result has `C(width, weight)` elements, no duplicates.
///
/// Steps from each code directly to the next one of the same weight, so the
/// `2^width` values that do not qualify are never touched.
pub fn k_subset_codes(width: usize, weight: usize) -> Result<CodeList> {
    if width > MAX_WIDTH {
        return Err(Error::InvalidArgument(format!(
            "width {width} exceeds the {MAX_WIDTH}-bit word limit"
        )));
    }
    if weight > width {
        return Err(Error::InvalidArgument(format!(
            "weight {weight} exceeds width {width}"
        )));
    }

    let top: Code = if width == MAX_WIDTH {
        Code::MAX
    } else {
        (1u64 << width) - 1
    };

    if weight == 0 {
        return Ok(CodeList {
            codes: vec![0],
            width,
            weight,
        });
    }
    if weight == width {
        return Ok(CodeList {
            codes: vec![top],
            width,
            weight,
        });
    }

    let expected = binomial(width as u64, weight as u64);
    let mut codes = Vec::with_capacity(usize::try_from(expected).unwrap_or(0));

    // Gosper stepping: next integer with the same popcount.
    let mut v: Code = (1u64 << weight) - 1;
    loop {
        codes.push(v);
        let t = v | (v - 1);
        let Some(t1) = t.checked_add(1) else { break };
        let next = t1 | (((!t & t1) - 1) >> (v.trailing_zeros() + 1));
        if next > top {
            break;
        }
        v = next;
    }

    debug_assert_eq!(codes.len() as u128, expected);
    Ok(CodeList {
        codes,
        width,
        weight,
    })
}

/// Exact binomial coefficient `C(n, k)`. Every value with `n <= 64` fits in
/// the u128 intermediate (the largest, `C(64, 32)`, is below `2^61`).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // Exact at each step: the running value is itself a binomial.
        acc = acc * (n as u128 - k as u128 + i) / i;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn naive_popcount(mut x: u64) -> u32 {
        let mut c = 0;
        while x != 0 {
            c += (x & 1) as u32;
            x >>= 1;
        }
        c
    }

    #[test]
    fn popcount_edges() {
        assert_eq!(popcount(0), 0);
        assert_eq!(popcount(u64::MAX), 64);
        for n in 1..=64usize {
            let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            assert_eq!(popcount(all), n as u32);
        }
        assert_eq!(popcount(0b1011), 3);
        assert_eq!(naive_popcount(0b1011), 3);
    }

    #[test]
    fn popcount_matches_portable_and_naive() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let x: u64 = rng.random();
            assert_eq!(popcount(x), popcount_portable(x));
            assert_eq!(popcount(x), naive_popcount(x));
        }
        for x in [0, 1, u64::MAX, u64::MAX - 1, 1 << 63, 0x8000_0001] {
            assert_eq!(popcount(x), popcount_portable(x));
        }
    }

    #[test]
    fn bit_at_examples() {
        assert_eq!(bit_at(0b100, 2, 3), 1);
        // 7 = 0111 in four bits: leftmost column (pos 3) is 0, rightmost is 1.
        assert_eq!(bit_at(7, 3, 4), 0);
        assert_eq!(bit_at(7, 0, 4), 1);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn bit_at_rejects_out_of_range() {
        bit_at(1, 3, 3);
    }

    #[test]
    fn bit_at_round_trip() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let width = rng.random_range(1..=64usize);
            let x = if width == 64 {
                rng.random()
            } else {
                rng.random_range(0..(1u64 << width))
            };
            let rebuilt = (0..width).fold(0u64, |acc, pos| acc | (bit_at(x, pos, width) << pos));
            assert_eq!(rebuilt, x);
        }
    }

    #[test]
    fn k_subset_edges() {
        for n in [1, 5, 13, 64] {
            assert_eq!(k_subset_codes(n, 0).unwrap().codes, vec![0]);
            let top = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            assert_eq!(k_subset_codes(n, n).unwrap().codes, vec![top]);
        }
        assert_eq!(
            k_subset_codes(4, 2).unwrap().codes,
            vec![3, 5, 6, 9, 10, 12]
        );
    }

    #[test]
    fn k_subset_matches_filter_oracle() {
        // Independent route: filter the whole 2^n range by naive popcount.
        for n in 1..=12usize {
            for k in 0..=n {
                let brute: Vec<u64> = (0..(1u64 << n))
                    .filter(|&x| naive_popcount(x) == k as u32)
                    .collect();
                let fast = k_subset_codes(n, k).unwrap();
                assert_eq!(fast.codes, brute, "n={n} k={k}");
                assert_eq!(fast.codes.len() as u128, binomial(n as u64, k as u64));
                assert!(fast.codes.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn k_subset_partition_identity() {
        // Codes of width n split by the top bit: those without it are exactly
        // the width n-1 codes of the same weight, those with it are the width
        // n-1 codes of weight k-1 shifted into the top bit.
        for n in 2..=12usize {
            for k in 1..n {
                let whole = k_subset_codes(n, k).unwrap().codes;
                let low = k_subset_codes(n - 1, k).unwrap().codes;
                let high: Vec<u64> = k_subset_codes(n - 1, k - 1)
                    .unwrap()
                    .codes
                    .iter()
                    .map(|y| y | (1u64 << (n - 1)))
                    .collect();
                let merged: Vec<u64> = low.into_iter().chain(high).collect();
                assert_eq!(whole, merged, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn k_subset_wide_words() {
        let wide = k_subset_codes(64, 1).unwrap().codes;
        assert_eq!(wide.len(), 64);
        assert_eq!(wide[63], 1u64 << 63);
        let almost = k_subset_codes(64, 63).unwrap().codes;
        assert_eq!(almost.len(), 64);
        assert_eq!(almost[0], u64::MAX >> 1);
        assert_eq!(almost[63], u64::MAX << 1);
    }

    #[test]
    fn k_subset_rejects_bad_arguments() {
        assert!(k_subset_codes(4, 5).is_err());
        assert!(k_subset_codes(65, 1).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(9, 4), 126);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }
}
