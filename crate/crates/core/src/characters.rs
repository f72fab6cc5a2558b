//! Graded dimensions of the three c = 1/2 Ising modules, of tensor products
//! of them, of code VOAs `M_C`, and of explicit frame decompositions.
//!
//! The Ising characters come from the free-fermion product forms
//!
//! ```text
//! ch_0 ± ch_{1/2} = ∏_{k≥1} (1 ± q^{k-1/2})
//! ch_{1/16}       = q^{1/16} ∏_{k≥1} (1 + q^k)
//! ```
//!
//! and carry no `q^{-c/24}` prefactor unless [`with_vacuum_prefactor`] is
//! applied.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gf2::{BinaryWord, Gf2Error, LinearCode, MAX_LENGTH};
use crate::par;
use crate::qseries::{QSeries, QSeriesError, UNITS_PER_Q};
use crate::structure::FrameDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacterError {
    #[error("code VOA characters need an even code")]
    OddCode,
    #[error("invalid Ising label {0:?}; expected 0, 1/2 or 1/16")]
    BadLabel(String),
    #[error("frame label length {0} is outside 1..={MAX_LENGTH}")]
    BadLabelLength(usize),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Series(#[from] QSeriesError),
}

/// Conformal weight `h` of an irreducible `L(1/2, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsingLabel {
    Zero,
    Half,
    Sixteenth,
}

impl IsingLabel {
    pub const ALL: [IsingLabel; 3] = [IsingLabel::Zero, IsingLabel::Half, IsingLabel::Sixteenth];

    /// `h` in 1/48 units.
    pub fn weight_units(self) -> i64 {
        match self {
            IsingLabel::Zero => 0,
            IsingLabel::Half => UNITS_PER_Q / 2,
            IsingLabel::Sixteenth => UNITS_PER_Q / 16,
        }
    }

    /// `2h` for `h ∈ {0, 1/2}`, i.e. the code coordinate of a τ-word-zero label.
    pub fn doubled(self) -> Option<bool> {
        match self {
            IsingLabel::Zero => Some(false),
            IsingLabel::Half => Some(true),
            IsingLabel::Sixteenth => None,
        }
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            IsingLabel::Half
        } else {
            IsingLabel::Zero
        }
    }
}

impl FromStr for IsingLabel {
    type Err = CharacterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(IsingLabel::Zero),
            "1/2" => Ok(IsingLabel::Half),
            "1/16" => Ok(IsingLabel::Sixteenth),
            other => Err(CharacterError::BadLabel(other.to_string())),
        }
    }
}

impl fmt::Display for IsingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsingLabel::Zero => "0",
            IsingLabel::Half => "1/2",
            IsingLabel::Sixteenth => "1/16",
        })
    }
}

/// An irreducible module `L(1/2,h_1) ⊗ ⋯ ⊗ L(1/2,h_n)` of the frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameModuleLabel {
    labels: Vec<IsingLabel>,
}

impl FrameModuleLabel {
    pub fn new(labels: Vec<IsingLabel>) -> Result<Self, CharacterError> {
        if labels.is_empty() || labels.len() > MAX_LENGTH {
            return Err(CharacterError::BadLabelLength(labels.len()));
        }
        Ok(Self { labels })
    }

    /// The label `(α_1/2, …, α_n/2)` of a codeword `α`.
    pub fn from_codeword(word: &BinaryWord) -> Self {
        Self {
            labels: (0..word.len())
                .map(|i| IsingLabel::from_bit(word.get(i)))
                .collect(),
        }
    }

    /// Parses `h1,h2,...,hn`.
    pub fn parse(s: &str) -> Result<Self, CharacterError> {
        let labels = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[IsingLabel] {
        &self.labels
    }

    /// Lowest conformal weight `Σ h_i`, in 1/48 units.
    pub fn top_weight_units(&self) -> i64 {
        self.labels.iter().map(|h| h.weight_units()).sum()
    }

    pub fn count(&self, h: IsingLabel) -> usize {
        self.labels.iter().filter(|&&x| x == h).count()
    }
}

impl fmt::Display for FrameModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// `∏_{k≥1} (1 + sign·x^{2k-1})` as dense coefficients in powers of `x = q^{1/2}`.
fn half_odd_product(max_index: usize, sign: i64) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); max_index + 1];
    coeffs[0] = BigInt::one();
    let sign = BigInt::from(sign);
    let mut step = 1;
    while step <= max_index {
        for i in (step..=max_index).rev() {
            if !coeffs[i - step].is_zero() {
                let add = &coeffs[i - step] * &sign;
                coeffs[i] += add;
            }
        }
        step += 2;
    }
    coeffs
}

/// `∏_{k≥1} (1 + q^k)` as dense coefficients in powers of `q`.
fn distinct_parts_product(max_power: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); max_power + 1];
    coeffs[0] = BigInt::one();
    for part in 1..=max_power {
        for i in (part..=max_power).rev() {
            if !coeffs[i - part].is_zero() {
                let add = coeffs[i - part].clone();
                coeffs[i] += add;
            }
        }
    }
    coeffs
}

/// Graded dimension of `L(1/2, h)` through exponent `order` (1/48 units).
pub fn ising_character(h: IsingLabel, order: i64) -> Result<QSeries, CharacterError> {
    let half = UNITS_PER_Q / 2;
    match h {
        IsingLabel::Zero | IsingLabel::Half => {
            if order < 0 {
                return Ok(QSeries::zero(order));
            }
            let max_index = (order / half) as usize;
            let plus = half_odd_product(max_index, 1);
            let minus = half_odd_product(max_index, -1);
            let parity = if h == IsingLabel::Zero { 0 } else { 1 };
            let two = BigInt::from(2);
            // even powers of q^{1/2} come from even subsets, odd from odd ones
            let terms = plus
                .iter()
                .zip(&minus)
                .enumerate()
                .filter(|(i, _)| i % 2 == parity)
                .map(|(i, (p, m))| {
                    let c = if parity == 0 {
                        (p + m) / &two
                    } else {
                        (p - m) / &two
                    };
                    (i as i64 * half, c)
                });
            Ok(QSeries::from_terms(terms, order)?)
        }
        IsingLabel::Sixteenth => {
            let top = h.weight_units();
            if order < top {
                return Ok(QSeries::zero(order));
            }
            let max_power = ((order - top) / UNITS_PER_Q) as usize;
            let terms = distinct_parts_product(max_power)
                .into_iter()
                .enumerate()
                .map(|(m, c)| (top + m as i64 * UNITS_PER_Q, c));
            Ok(QSeries::from_terms(terms, order)?)
        }
    }
}

/// The three Ising characters at a fixed order, computed once.
#[derive(Debug, Clone)]
pub struct IsingTable {
    zero: QSeries,
    half: QSeries,
    sixteenth: QSeries,
}

impl IsingTable {
    pub fn new(order: i64) -> Result<Self, CharacterError> {
        Ok(Self {
            zero: ising_character(IsingLabel::Zero, order)?,
            half: ising_character(IsingLabel::Half, order)?,
            sixteenth: ising_character(IsingLabel::Sixteenth, order)?,
        })
    }

    pub fn get(&self, h: IsingLabel) -> &QSeries {
        match h {
            IsingLabel::Zero => &self.zero,
            IsingLabel::Half => &self.half,
            IsingLabel::Sixteenth => &self.sixteenth,
        }
    }

    pub fn order(&self) -> i64 {
        self.zero.order()
    }

    fn frame_module(&self, m: &FrameModuleLabel) -> Result<QSeries, CharacterError> {
        let mut acc = QSeries::one(self.order());
        for h in IsingLabel::ALL {
            let k = m.count(h);
            if k > 0 {
                acc = acc.mul(&self.get(h).pow(k as u32)?)?;
            }
        }
        Ok(acc)
    }
}

/// Character of `⊗ L(1/2, h_i)`: the product of the coordinate characters.
pub fn frame_module_character(m: &FrameModuleLabel, order: i64) -> Result<QSeries, CharacterError> {
    IsingTable::new(order)?.frame_module(m)
}

/// Character of the code VOA `M_C = ⊕_{α∈C} ⊗_i L(1/2, α_i/2)`.
///
/// Codewords of equal weight contribute equal products, so this evaluates
/// `Σ_w A_w(C) · ch_{1/2}^w · ch_0^{n-w}` from the weight enumerator.
pub fn code_voa_character(code: &LinearCode, order: i64) -> Result<QSeries, CharacterError> {
    if !code.is_even() {
        return Err(CharacterError::OddCode);
    }
    let n = code.length();
    let enumerator = code.weight_enumerator()?;
    let table = IsingTable::new(order)?;

    let mut half_powers = vec![QSeries::one(order)];
    let mut zero_powers = vec![QSeries::one(order)];
    for i in 1..=n {
        half_powers.push(half_powers[i - 1].mul(table.get(IsingLabel::Half))?);
        zero_powers.push(zero_powers[i - 1].mul(table.get(IsingLabel::Zero))?);
    }

    let weighted: Vec<(usize, BigInt)> = enumerator
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(w, a)| (w, BigInt::from(a.clone())))
        .collect();
    let terms = par::map(&weighted, |(w, a)| {
        half_powers[*w].mul(&zero_powers[n - w]).map(|s| s.scale(a))
    });
    let mut total = QSeries::zero(order);
    for t in terms {
        total = total.add(&t?)?;
    }
    Ok(total)
}

/// `Σ m · ch(label)` over the entries of a frame decomposition.
pub fn frame_decomposition_character(
    d: &FrameDecomposition,
    order: i64,
) -> Result<QSeries, CharacterError> {
    let table = IsingTable::new(order)?;
    let entries = d.entries();
    let terms = par::map(entries, |(label, multiplicity)| {
        table
            .frame_module(label)
            .map(|s| s.scale(&BigInt::from(*multiplicity)))
    });
    let mut total = QSeries::zero(order);
    for t in terms {
        total = total.add(&t?)?;
    }
    Ok(total)
}

/// Multiplies by `q^{-c/24}` with `c = n/2`, i.e. shifts by `-n` units of 1/48.
pub fn with_vacuum_prefactor(
    series: &QSeries,
    frame_length: usize,
) -> Result<QSeries, CharacterError> {
    Ok(series.shift(-(frame_length as i64))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: i64 = UNITS_PER_Q;

    fn coeffs_on_grid(s: &QSeries, start: i64, step: i64, count: usize) -> Vec<i64> {
        (0..count)
            .map(|i| {
                let c = s.coefficient_at(start + i as i64 * step).unwrap();
                i64::try_from(c).unwrap()
            })
            .collect()
    }

    #[test]
    fn ising_vacuum_leading_terms() {
        let ch0 = ising_character(IsingLabel::Zero, 10 * Q).unwrap();
        assert_eq!(
            coeffs_on_grid(&ch0, 0, Q, 11),
            vec![1, 0, 1, 1, 2, 2, 3, 3, 5, 5, 7]
        );
        // no half-integer grades in L(1/2, 0)
        assert!(ch0.terms().all(|(e, _)| e % Q == 0));
        assert_eq!(ch0.coefficient_at(Q).unwrap(), BigInt::zero());
        assert_eq!(ch0.coefficient_at(2 * Q).unwrap(), BigInt::one());
    }

    #[test]
    fn ising_half_leading_terms() {
        let ch = ising_character(IsingLabel::Half, 10 * Q).unwrap();
        assert_eq!(
            coeffs_on_grid(&ch, Q / 2, Q, 10),
            vec![1, 1, 1, 1, 2, 2, 3, 4, 5, 6]
        );
        assert!(ch.terms().all(|(e, _)| e % Q == Q / 2));
    }

    #[test]
    fn ising_sixteenth_leading_terms() {
        let ch = ising_character(IsingLabel::Sixteenth, 10 * Q).unwrap();
        assert_eq!(
            coeffs_on_grid(&ch, 3, Q, 10),
            vec![1, 1, 1, 2, 2, 3, 4, 5, 6, 8]
        );
        assert_eq!(ch.min_exponent(), Some(3));
    }

    #[test]
    fn frame_module_examples() {
        let order = 6 * Q;
        let zz = FrameModuleLabel::parse("0,0").unwrap();
        let ch0 = ising_character(IsingLabel::Zero, order).unwrap();
        assert_eq!(
            frame_module_character(&zz, order).unwrap(),
            ch0.pow(2).unwrap()
        );

        let hh = FrameModuleLabel::parse("1/2,1/2").unwrap();
        let ch = frame_module_character(&hh, order).unwrap();
        assert_eq!(ch.min_exponent(), Some(Q));
        assert_eq!(ch.coefficient_at(Q).unwrap(), BigInt::one());

        let sixteen = FrameModuleLabel::new(vec![IsingLabel::Sixteenth; 16]).unwrap();
        assert_eq!(sixteen.top_weight_units(), Q);
        let ch = frame_module_character(&sixteen, order).unwrap();
        assert_eq!(ch.min_exponent(), Some(Q));
    }

    #[test]
    fn vacuum_power_grade_two() {
        let ch0 = ising_character(IsingLabel::Zero, 4 * Q).unwrap();
        let p = ch0.pow(16).unwrap();
        assert_eq!(p.coefficient_at(2 * Q).unwrap(), BigInt::from(16));
    }

    #[test]
    fn code_voa_small_codes() {
        let order = 8 * Q;
        let one = LinearCode::zero(1).unwrap();
        assert_eq!(
            code_voa_character(&one, order).unwrap(),
            ising_character(IsingLabel::Zero, order).unwrap()
        );

        let c = LinearCode::all_ones_repetition(2).unwrap();
        let ch = code_voa_character(&c, order).unwrap();
        assert_eq!(ch.coefficient_at(Q).unwrap(), BigInt::one());

        let rm24 = LinearCode::reed_muller(2, 4).unwrap();
        let ch = code_voa_character(&rm24, order).unwrap();
        assert_eq!(ch.coefficient_at(Q).unwrap(), BigInt::zero());
        assert!(ch.has_nonnegative_coefficients());

        let odd = LinearCode::from_rows(&[BinaryWord::parse("100").unwrap()]).unwrap();
        assert_eq!(
            code_voa_character(&odd, order),
            Err(CharacterError::OddCode)
        );
    }

    #[test]
    fn decomposition_matches_code_voa() {
        let order = 8 * Q;
        let d = FrameDecomposition::new(
            2,
            vec![
                (FrameModuleLabel::parse("0,0").unwrap(), 1),
                (FrameModuleLabel::parse("1/2,1/2").unwrap(), 1),
            ],
        )
        .unwrap();
        let c = LinearCode::all_ones_repetition(2).unwrap();
        assert_eq!(
            frame_decomposition_character(&d, order).unwrap(),
            code_voa_character(&c, order).unwrap()
        );
        let empty = FrameDecomposition::new(2, vec![]).unwrap();
        assert!(frame_decomposition_character(&empty, order)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn prefactor_shifts_by_frame_length() {
        let ch = ising_character(IsingLabel::Zero, 4 * Q).unwrap();
        let shifted = with_vacuum_prefactor(&ch, 1).unwrap();
        assert_eq!(shifted.min_exponent(), Some(-1));
        assert_eq!(shifted.to_string().split(" + ").next(), Some("q^(-1/48)"));
    }

    #[test]
    fn label_parsing() {
        let m = FrameModuleLabel::parse("0, 1/2,1/16 ,1/16").unwrap();
        assert_eq!(m.to_string(), "0,1/2,1/16,1/16");
        assert_eq!(m.top_weight_units(), 24 + 6);
        assert!(matches!(
            FrameModuleLabel::parse("0,1/4"),
            Err(CharacterError::BadLabel(_))
        ));
    }
}
