//! Exact counts: histograms, orbit sizes, permutation-closed subsets and the
//! fraction of all subsets that are closed under permutation.
//!
//! Subset counts are `2^k - 1` for exponents that quickly leave machine range,
//! so everything is kept as [`BigCount`] and fractions are reported in log10.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::space::{Histogram, SpaceSignature};

pub type BigCount = BigUint;

/// Largest exponent `k` for which `2^k - 1` is materialized exactly (a 64 MiB integer).
pub const MAX_SUBSET_EXPONENT: u64 = 1 << 29;

/// `log10` of a ratio in `(0, 1]` together with the bit lengths of the exact
/// numerator and denominator it was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogFraction {
    pub log10_value: f64,
    pub numerator_bits: u64,
    pub denominator_bits: u64,
}

/// One cell of the fraction table.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionCell {
    pub signature: SpaceSignature,
    pub num_histograms: BigCount,
    pub fraction: LogFraction,
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    // acc = C(n-k+i, i) after step i, so each division is exact.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `|X|! / Π_y h(y)!`, the size of the basis class of `h`.
pub fn multinomial(h: &Histogram) -> BigCount {
    let mut remaining = h.signature().domain_size() as u64;
    let mut acc = BigUint::one();
    for &c in h.counts() {
        acc *= binomial(remaining, c as u64);
        remaining -= c as u64;
    }
    acc
}

/// Number of Y-histograms, `C(|X|+|Y|-1, |X|)`.
pub fn count_histograms(signature: SpaceSignature) -> BigCount {
    let x = signature.domain_size() as u64;
    let y = signature.codomain_size() as u64;
    binomial(x + y - 1, x)
}

fn pow2_minus_one(exponent: &BigUint, what: &'static str) -> Result<BigCount> {
    let k = exponent
        .to_u64()
        .filter(|&k| k <= MAX_SUBSET_EXPONENT)
        .ok_or_else(|| {
            Error::capacity(what, format!("2^{exponent}"), format!("2^{MAX_SUBSET_EXPONENT}"))
        })?;
    Ok((BigUint::one() << k) - 1u8)
}

/// Number of non-empty permutation-closed subsets of `Y^X`: `2^{#histograms} - 1`.
pub fn count_cup_subsets(signature: SpaceSignature) -> Result<BigCount> {
    pow2_minus_one(&count_histograms(signature), "c.u.p. subset count")
}

/// Number of non-empty subsets of `Y^X`: `2^{|Y|^|X|} - 1`.
pub fn count_all_subsets(signature: SpaceSignature) -> Result<BigCount> {
    pow2_minus_one(&signature.function_count(), "subset count")
}

/// `log10(n)` for `n > 0`: the top 64 bits go through `f64::log10`, the
/// remaining shift is added as `shift * log10(2)`.
pub fn log10_big(n: &BigUint) -> f64 {
    assert!(!n.is_zero(), "log10 of zero");
    let bits = n.bits();
    if bits <= 64 {
        return (n.to_u64().expect("fits in 64 bits") as f64).log10();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("top 64 bits");
    (top as f64).log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// `log10(num / den)` for `0 < num <= den`.
pub fn log_fraction(num: &BigUint, den: &BigUint) -> LogFraction {
    let log10_value = if num == den {
        0.0
    } else {
        (log10_big(num) - log10_big(den)).min(0.0)
    };
    LogFraction {
        log10_value,
        numerator_bits: num.bits(),
        denominator_bits: den.bits(),
    }
}

/// Fraction of non-empty subsets of `Y^X` that are closed under permutation.
pub fn cup_fraction(signature: SpaceSignature) -> Result<LogFraction> {
    let cup = count_cup_subsets(signature)?;
    let all = count_all_subsets(signature)?;
    Ok(log_fraction(&cup, &all))
}

/// One cell per `(|X|, |Y|)`, ordered by `|Y|` then `|X|` (one curve after another).
pub fn fraction_table(x_range: &[usize], y_range: &[usize]) -> Result<Vec<FractionCell>> {
    if x_range.is_empty() || y_range.is_empty() {
        return Err(Error::InvalidArgument("fraction table ranges must be non-empty".into()));
    }
    let mut cells = Vec::with_capacity(x_range.len() * y_range.len());
    for &y in y_range {
        for &x in x_range {
            let signature = SpaceSignature::new(x, y)?;
            cells.push(FractionCell {
                signature,
                num_histograms: count_histograms(signature),
                fraction: cup_fraction(signature)?,
            });
        }
    }
    Ok(cells)
}
