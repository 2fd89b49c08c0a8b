//! Truncated power series with big-integer coefficients and the catalogue of
//! limit generating functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{is_convex_penny, is_steep, partitions_of};

pub const DEFAULT_ORDER: usize = 40;

/// `c_0 + c_1 x + ... + c_K x^K`, with everything above `x^K` discarded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::monomial(order, 0, 1)
    }

    /// `c x^e`.
    pub fn monomial(order: usize, e: usize, c: i64) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if e <= order {
            s.coeffs[e] = BigInt::from(c);
        }
        s
    }

    pub fn from_coeffs<T: Into<BigInt>>(order: usize, coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut s = TruncatedSeries::zero(order);
        for (i, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[i] = c.into();
        }
        s
    }

    /// `1 / (1 - x^i)`, for `i >= 1`.
    pub fn geometric_inverse(order: usize, i: usize) -> Self {
        assert!(i >= 1, "1/(1-x^0) is undefined");
        let mut s = TruncatedSeries::zero(order);
        for e in (0..=order).step_by(i) {
            s.coeffs[e] = BigInt::one();
        }
        s
    }

    /// `1 + x^i`.
    pub fn one_plus(order: usize, i: usize) -> Self {
        &TruncatedSeries::one(order) + &TruncatedSeries::monomial(order, i, 1)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        for (i, c) in self.coeffs.iter().take(order + 1).enumerate() {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn scalar_mul(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * &c).collect() }
    }

    /// Multiplies by `x^m`.
    pub fn shift(&self, m: usize) -> Self {
        let mut s = TruncatedSeries::zero(self.order());
        for i in m..=self.order() {
            s.coeffs[i] = self.coeffs[i - m].clone();
        }
        s
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TruncatedSeries::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients as `i64`, failing on overflow.
    pub fn to_i64(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| i64::try_from(c).map_err(|_| Error::Overflow { n: 0, k }))
            .collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let k = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=k).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let k = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=k).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let k = self.order().min(rhs.order());
        let mut out = TruncatedSeries::zero(k);
        for (i, a) in self.coeffs.iter().take(k + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(k + 1 - i).enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $f(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

fn product(order: usize, factors: impl IntoIterator<Item = TruncatedSeries>) -> TruncatedSeries {
    factors.into_iter().fold(TruncatedSeries::one(order), |acc, f| &acc * &f)
}

/// `P(x) = ∏ 1/(1-x^i)`.
pub fn partition_series(order: usize) -> TruncatedSeries {
    product(order, (1..=order).map(|i| TruncatedSeries::geometric_inverse(order, i)))
}

/// `∏_{i=lo}^{hi} (1+x^i)`.
pub fn distinct_parts_range(order: usize, lo: usize, hi: usize) -> TruncatedSeries {
    product(order, (lo..=hi.min(order)).map(|i| TruncatedSeries::one_plus(order, i)))
}

/// `∏ (1+x^i)`.
pub fn distinct_parts_series(order: usize) -> TruncatedSeries {
    distinct_parts_range(order, 1, order)
}

/// `∏ (1+x^i)/(1-x^i)`.
pub fn overpartition_series(order: usize) -> TruncatedSeries {
    &distinct_parts_series(order) * &partition_series(order)
}

/// Counts partitions of each `k <= order` passing `test`.
pub fn counted_series(order: usize, test: impl Fn(&crate::partitions::Partition) -> bool) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(order, (0..=order).map(|k| partitions_of(k).iter().filter(|l| test(l)).count() as u64))
}

pub fn steep_series(order: usize) -> TruncatedSeries {
    counted_series(order, is_steep)
}

pub fn convex_penny_series(order: usize) -> TruncatedSeries {
    counted_series(order, is_convex_penny)
}

/// `Σ (k+1) x^k ∏_{i<=k} 1/(1-x^i)`.
pub fn c_132_1432_pair(order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(order);
    let mut prod = TruncatedSeries::one(order);
    for k in 0..=order {
        if k >= 1 {
            prod = &prod * &TruncatedSeries::geometric_inverse(order, k);
        }
        acc = &acc + &prod.shift(k).scalar_mul(k as i64 + 1);
    }
    acc
}

/// `C_{132,4231}`.
pub fn c_132_4231(order: usize) -> TruncatedSeries {
    let mut acc = distinct_parts_series(order);
    for a in 0..=order {
        if (a + 2) > order {
            break;
        }
        let pa = distinct_parts_range(order, 1, a);
        for b in 0..=order {
            let e = (a + 2) * (b + 1);
            if e > order {
                break;
            }
            let pb = distinct_parts_range(order, 1, b);
            acc = &acc + &(&pa * &pb).shift(e);
        }
    }
    acc
}

/// `C_{132,4321}`.
pub fn c_132_4321(order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for k in 1..=order {
        let gk = TruncatedSeries::geometric_inverse(order, k);
        acc = &acc + &gk.shift(k);
        for i in k + 1..=order {
            if k + i > order {
                break;
            }
            acc = &acc + &(&gk * &TruncatedSeries::geometric_inverse(order, i)).shift(k + i);
        }
    }
    acc
}

/// `C_{132,2341}`.
pub fn c_132_2341(order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for k in 1..=order {
        let e = k * (k + 1) / 2;
        if e > order {
            break;
        }
        let x = TruncatedSeries::monomial(order, 1, 1);
        let prod = product(order, (1..=k).map(|i| &x + &TruncatedSeries::geometric_inverse(order, i)));
        acc = &acc + &prod.shift(e);
    }
    acc
}

/// `C_{132,3421}`.
pub fn c_132_3421(order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for k in 1..=order {
        let term = &TruncatedSeries::geometric_inverse(order, k) * &distinct_parts_range(order, k + 1, order);
        acc = &acc + &term.shift(k);
    }
    acc
}

/// Names accepted by [`named_gf`].
pub const GF_NAMES: [&str; 13] = [
    "1324", "1324,1243", "1324,2143", "1324,1342", "1324,1432", "1324,4231", "1324,4321", "1324,2341",
    "1324,2413", "1324,2431", "1324,3412", "1324,3421", "partitions",
];

/// The limit generating function `C_B(x)` of `B = {1324}` or `{1324, p}`.
/// A bare second pattern such as `"2341"` is also accepted.
pub fn named_gf(name: &str, order: usize) -> Result<TruncatedSeries> {
    let key = name.trim().replace(' ', "");
    let key = key.strip_prefix("1324,").unwrap_or(&key);
    let p = partition_series(order);
    let s = match key {
        "1324" | "2413" => p.pow(2),
        "partitions" | "1243" => p,
        "2143" => &p.scalar_mul(2) - &TruncatedSeries::one(order),
        "1342" => overpartition_series(order),
        "1432" => c_132_1432_pair(order),
        "4231" => c_132_4231(order).pow(2),
        "4321" => c_132_4321(order).pow(2),
        "2341" => c_132_2341(order).pow(2),
        "2431" => &p * &steep_series(order),
        "3412" => convex_penny_series(order).pow(2),
        "3421" => c_132_3421(order).pow(2),
        _ => return Err(Error::UnknownSeries(name.to_string())),
    };
    Ok(s)
}

/// `x^{n-1} (2+2x) C_{1324,1342}(x)`.
pub fn secondary_gf_1342(n: usize, order: usize) -> TruncatedSeries {
    let c = overpartition_series(order);
    let two = TruncatedSeries::from_coeffs(order, [2, 2]);
    (&two * &c).shift(n.saturating_sub(1))
}

/// `[x^k] (1 - x - x^{n-1}(2+2x)) / (1-x) · C_{1324,1342}(x)`, valid for
/// `n >= (k+7)/2`.
pub fn av_1324_1342(n: usize, k: usize) -> Result<BigInt> {
    if n < 1 || 2 * n < k + 7 {
        return Err(Error::Precondition(format!("closed form needs n >= (k+7)/2, got n={n}, k={k}")));
    }
    let order = k;
    let c = overpartition_series(order);
    let numer = &TruncatedSeries::from_coeffs(order, [1, -1])
        - &TruncatedSeries::from_coeffs(order, [2, 2]).shift(n - 1);
    let s = &(&numer * &TruncatedSeries::geometric_inverse(order, 1)) * &c;
    Ok(s.coeff(k))
}
