//! Scheme parameters, closed integer intervals and dyadic intervals.

use core::fmt;

/// Largest supported `log2 n`. Endpoints up to `4·n·log n` must fit in a `u64`.
pub const MAX_ELL: u32 = 56;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamsError {
    #[error("family size must be positive")]
    ZeroFamilySize,
    #[error("family size 2^{ell} exceeds the supported maximum 2^{MAX_ELL}")]
    TooLarge { ell: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("scale {i} outside [1, {ell}]")]
    Scale { i: u32, ell: u32 },
    #[error("offset a = {a} must be at least 1")]
    Offset { a: u64 },
    #[error("length b = {b} outside [1, {max}]")]
    Length { b: u64, max: u64 },
    #[error("right endpoint 2^{i}·({a}+{b}) exceeds the universe bound {universe}")]
    Universe {
        i: u32,
        a: u64,
        b: u64,
        universe: u64,
    },
}

/// Parameters of the labeling scheme for the family of trees with at most
/// `n = 2^ell` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchemeParams {
    ell: u32,
}

pub(crate) fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

impl SchemeParams {
    /// Parameters for `n = 2^ell`, `1 <= ell <= MAX_ELL`.
    pub fn from_ell(ell: u32) -> Result<Self, ParamsError> {
        if ell > MAX_ELL {
            return Err(ParamsError::TooLarge { ell });
        }
        Ok(SchemeParams { ell: ell.max(1) })
    }

    /// Parameters for trees of at most `n` nodes; `n` is rounded up to a power
    /// of two, and to at least 2.
    pub fn for_family_size(n: u64) -> Result<Self, ParamsError> {
        if n == 0 {
            return Err(ParamsError::ZeroFamilySize);
        }
        Self::from_ell(ceil_log2(n))
    }

    /// Family size `n`, a power of two.
    pub fn family_size(&self) -> u64 {
        1 << self.ell
    }

    /// `log2 n`.
    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `⌈log2 ell⌉`, taken as 1 when `ell = 1`.
    pub fn lambda(&self) -> u32 {
        ceil_log2(u64::from(self.ell)).max(1)
    }

    /// Upper end of the universe `[1, 4·n·ell]`.
    pub fn universe(&self) -> u64 {
        (u64::from(self.ell) << self.ell) << 2
    }

    /// Largest admissible interval length parameter `b`.
    pub fn max_length(&self) -> u64 {
        4 * u64::from(self.ell)
    }
}

/// Closed integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: u64,
    pub hi: u64,
}

impl Interval {
    pub fn new(lo: u64, hi: u64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `self ⊆ other` as integer sets.
    pub fn is_within(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `I ≺ I'`: `I` ends strictly before `I'` starts.
pub fn precedes(first: &Interval, second: &Interval) -> bool {
    first.hi < second.lo
}

/// `inner ⊂ outer` with `inner != outer`.
pub fn strictly_contains(outer: &Interval, inner: &Interval) -> bool {
    inner.is_within(outer) && inner != outer
}

/// The interval `[2^i·a, 2^i·(a+b)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    pub i: u32,
    pub a: u64,
    pub b: u64,
}

impl DyadicInterval {
    pub fn new(i: u32, a: u64, b: u64) -> Self {
        DyadicInterval { i, a, b }
    }

    pub fn validate(&self, params: &SchemeParams) -> Result<(), IntervalError> {
        let ell = params.ell();
        if self.i < 1 || self.i > ell {
            return Err(IntervalError::Scale { i: self.i, ell });
        }
        if self.a < 1 {
            return Err(IntervalError::Offset { a: self.a });
        }
        if self.b < 1 || self.b > params.max_length() {
            return Err(IntervalError::Length {
                b: self.b,
                max: params.max_length(),
            });
        }
        let universe = params.universe();
        let fits = self
            .a
            .checked_add(self.b)
            .filter(|&s| s <= universe >> self.i)
            .is_some();
        if !fits {
            return Err(IntervalError::Universe {
                i: self.i,
                a: self.a,
                b: self.b,
                universe,
            });
        }
        Ok(())
    }

    /// Endpoints without validation; shifts and one add.
    pub fn interval(&self) -> Interval {
        Interval {
            lo: self.a << self.i,
            hi: (self.a + self.b) << self.i,
        }
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({}, {}, {})", self.i, self.a, self.b)
    }
}

/// Endpoints `(2^i·a, 2^i·(a+b))` of a validated dyadic interval.
pub fn endpoints(params: &SchemeParams, iv: &DyadicInterval) -> Result<(u64, u64), IntervalError> {
    iv.validate(params)?;
    let Interval { lo, hi } = iv.interval();
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_derived_quantities() {
        let p = SchemeParams::for_family_size(16).unwrap();
        assert_eq!(
            (p.family_size(), p.ell(), p.lambda(), p.universe()),
            (16, 4, 2, 256)
        );
        let p = SchemeParams::for_family_size(2).unwrap();
        assert_eq!((p.ell(), p.lambda(), p.universe()), (1, 1, 8));
        assert_eq!(SchemeParams::for_family_size(5).unwrap().family_size(), 8);
        assert_eq!(SchemeParams::for_family_size(1).unwrap().family_size(), 2);
        assert_eq!(SchemeParams::from_ell(10).unwrap().lambda(), 4);
        assert_eq!(SchemeParams::from_ell(20).unwrap().lambda(), 5);
        assert_eq!(SchemeParams::from_ell(48).unwrap().lambda(), 6);
        assert_eq!(
            SchemeParams::for_family_size(0),
            Err(ParamsError::ZeroFamilySize)
        );
        assert!(SchemeParams::from_ell(57).is_err());
        let big = SchemeParams::from_ell(MAX_ELL).unwrap();
        assert_eq!(big.universe(), 56u64 << 58);
    }

    #[test]
    fn endpoint_examples() {
        let p = SchemeParams::from_ell(4).unwrap();
        assert_eq!(endpoints(&p, &DyadicInterval::new(2, 3, 5)), Ok((12, 32)));
        assert_eq!(endpoints(&p, &DyadicInterval::new(1, 1, 1)), Ok((2, 4)));
        assert_eq!(endpoints(&p, &DyadicInterval::new(4, 1, 4)), Ok((16, 80)));
    }

    #[test]
    fn endpoint_invariant_violations() {
        let p = SchemeParams::from_ell(4).unwrap();
        assert!(matches!(
            endpoints(&p, &DyadicInterval::new(0, 1, 1)),
            Err(IntervalError::Scale { .. })
        ));
        assert!(matches!(
            endpoints(&p, &DyadicInterval::new(1, 0, 1)),
            Err(IntervalError::Offset { .. })
        ));
        assert!(matches!(
            endpoints(&p, &DyadicInterval::new(1, 1, 17)),
            Err(IntervalError::Length { .. })
        ));
        // 2^4·(15+2) = 272 > 256
        assert!(matches!(
            endpoints(&p, &DyadicInterval::new(4, 15, 2)),
            Err(IntervalError::Universe { .. })
        ));
        assert_eq!(
            endpoints(&p, &DyadicInterval::new(4, 15, 1)),
            Ok((240, 256))
        );
    }

    #[test]
    fn precedence_and_containment() {
        let iv = Interval::new;
        assert!(precedes(&iv(12, 32), &iv(40, 44)));
        assert!(!precedes(&iv(12, 32), &iv(30, 44)));
        assert!(precedes(&iv(5, 5), &iv(6, 6)));
        assert!(strictly_contains(&iv(4, 16), &iv(6, 10)));
        assert!(!strictly_contains(&iv(4, 16), &iv(4, 16)));
        assert!(!strictly_contains(&iv(4, 16), &iv(10, 20)));
        assert!(strictly_contains(&iv(4, 16), &iv(4, 15)));
    }
}
