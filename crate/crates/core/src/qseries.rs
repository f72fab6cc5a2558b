//! Truncated formal power series in `q` with exponents on the (1/48)·Z grid.
//!
//! Every exponent is an integer count of 1/48 units: `q^(1/16)` is stored at
//! 3, `q^(1/2)` at 24, `q` at 48. A series with order `T` is exact for all
//! exponents `≤ T`; anything above is unknown, not zero.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent units per power of `q`.
pub const UNITS_PER_Q: i64 = 48;

/// Lowest storable exponent, `q^-2`.
pub const MIN_EXPONENT: i64 = -2 * UNITS_PER_Q;

/// Through `q^20`.
pub const DEFAULT_ORDER: i64 = 20 * UNITS_PER_Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QSeriesError {
    #[error("truncation orders differ: {left} vs {right} (1/48 units)")]
    TruncationMismatch { left: i64, right: i64 },
    #[error("coefficient at exponent {exponent}/48 is beyond the truncation order {order}/48")]
    BeyondTruncation { exponent: i64, order: i64 },
    #[error("exponent {exponent}/48 is below the floor {MIN_EXPONENT}/48")]
    BelowFloor { exponent: i64 },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    order: i64,
    coefficients: BTreeMap<i64, BigInt>,
}

impl QSeries {
    pub fn zero(order: i64) -> Self {
        Self {
            order,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn one(order: i64) -> Self {
        let mut s = Self::zero(order);
        if order >= 0 {
            s.coefficients.insert(0, BigInt::one());
        }
        s
    }

    /// `coefficient · q^(exponent/48)`; dropped if beyond `order`.
    pub fn monomial(exponent: i64, coefficient: BigInt, order: i64) -> Result<Self, QSeriesError> {
        Self::from_terms([(exponent, coefficient)], order)
    }

    /// Sums the given terms; exponents above `order` are dropped.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (i64, BigInt)>,
        order: i64,
    ) -> Result<Self, QSeriesError> {
        let mut s = Self::zero(order);
        for (e, c) in terms {
            if e < MIN_EXPONENT {
                return Err(QSeriesError::BelowFloor { exponent: e });
            }
            if e <= order {
                s.accumulate(e, c);
            }
        }
        Ok(s)
    }

    fn accumulate(&mut self, exponent: i64, value: BigInt) {
        if value.is_zero() {
            return;
        }
        let slot = self
            .coefficients
            .entry(exponent)
            .or_insert_with(BigInt::zero);
        *slot += value;
        if slot.is_zero() {
            self.coefficients.remove(&exponent);
        }
    }

    /// The largest exponent (1/48 units) at which coefficients are known.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coefficients.keys().next().copied()
    }

    /// Nonzero terms in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coefficients.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient_at(&self, exponent: i64) -> Result<BigInt, QSeriesError> {
        if exponent > self.order {
            return Err(QSeriesError::BeyondTruncation {
                exponent,
                order: self.order,
            });
        }
        Ok(self
            .coefficients
            .get(&exponent)
            .cloned()
            .unwrap_or_default())
    }

    /// Coefficient of `q^power` for an integer power.
    pub fn coefficient_at_q(&self, power: i64) -> Result<BigInt, QSeriesError> {
        self.coefficient_at(power * UNITS_PER_Q)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coefficients.values().all(|c| !c.is_negative())
    }

    fn check_order(&self, other: &Self) -> Result<(), QSeriesError> {
        if self.order != other.order {
            return Err(QSeriesError::TruncationMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coefficients {
            out.accumulate(*e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            coefficients: self.coefficients.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(self.order);
        }
        Self {
            order: self.order,
            coefficients: self
                .coefficients
                .iter()
                .map(|(e, c)| (*e, c * factor))
                .collect(),
        }
    }

    /// Cauchy product.
    ///
    /// For series with no negative exponents the result keeps the common
    /// order `T`. A factor whose lowest exponent `m` is negative shifts
    /// unknown terms of the other factor down to `T + m + 1`, so the result
    /// order becomes `T + min(0, m_a, m_b)`.
    pub fn mul(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.check_order(other)?;
        let low = self
            .min_exponent()
            .unwrap_or(0)
            .min(other.min_exponent().unwrap_or(0))
            .min(0);
        let order = self.order + low;
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.coefficients {
            for (eb, cb) in &other.coefficients {
                let e = ea + eb;
                if e > order {
                    // exponents of `other` are increasing
                    break;
                }
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        if let Some(&e) = acc.keys().next() {
            if e < MIN_EXPONENT {
                return Err(QSeriesError::BelowFloor { exponent: e });
            }
        }
        Ok(Self {
            order,
            coefficients: acc,
        })
    }

    /// `self^m` by repeated squaring; `self^0 = 1`.
    pub fn pow(&self, mut m: u32) -> Result<Self, QSeriesError> {
        let mut result = Self::one(self.order);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = result.mul_aligned(&base)?;
            }
            m >>= 1;
            if m > 0 {
                base = base.mul_aligned(&base)?;
            }
        }
        Ok(result)
    }

    // Multiplies after truncating both sides to the smaller order, which
    // keeps repeated squaring working when orders drift for negative exponents.
    fn mul_aligned(&self, other: &Self) -> Result<Self, QSeriesError> {
        let order = self.order.min(other.order);
        self.truncate(order)?.mul(&other.truncate(order)?)
    }

    /// Forgets every term above `order`; `order` must not exceed the current one.
    pub fn truncate(&self, order: i64) -> Result<Self, QSeriesError> {
        if order > self.order {
            return Err(QSeriesError::BeyondTruncation {
                exponent: order,
                order: self.order,
            });
        }
        Ok(Self {
            order,
            coefficients: self
                .coefficients
                .range(..=order)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        })
    }

    /// Multiplies by `q^(shift/48)`; the order moves with the terms.
    pub fn shift(&self, shift: i64) -> Result<Self, QSeriesError> {
        if let Some(e) = self.min_exponent() {
            if e + shift < MIN_EXPONENT {
                return Err(QSeriesError::BelowFloor {
                    exponent: e + shift,
                });
            }
        }
        Ok(Self {
            order: self.order + shift,
            coefficients: self
                .coefficients
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        })
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Renders `q^(e/48)` with the exponent as a reduced fraction: `q`, `q^2`,
/// `q^-1`, `q^(1/16)`, `q^(-1/2)`.
pub fn format_power(exponent: i64) -> String {
    let g = gcd(exponent, UNITS_PER_Q);
    let (num, den) = (exponent / g, UNITS_PER_Q / g);
    match (num, den) {
        (1, 1) => "q".to_string(),
        (_, 1) => format!("q^{num}"),
        _ => format!("q^({num}/{den})"),
    }
}

/// Renders an exponent in 1/48 units as a reduced fraction: `0`, `2`, `1/16`.
pub fn format_exponent(exponent: i64) -> String {
    let g = gcd(exponent, UNITS_PER_Q).max(1);
    let (num, den) = (exponent / g, UNITS_PER_Q / g);
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

impl fmt::Display for QSeries {
    /// Terms in increasing exponent, e.g. `1 + 2*q^(1/2) + 196884*q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coefficients.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *e == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&format_power(*e))?;
            } else {
                write!(f, "{magnitude}*{}", format_power(*e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O(q^({}/48)+)", self.order)
    }
}
