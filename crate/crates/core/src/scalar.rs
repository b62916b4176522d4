//! Scalar types usable as embedding coordinates.
//!
//! Landmark coordinates are hop counts when produced by BFS and real numbers
//! when produced by a learned model. Both share the bound arithmetic, so the
//! embedding code is written once against [`Distance`].

use std::fmt::{Debug, Display};

use num_traits::{Num, NumCast};

/// Hop count produced by BFS.
pub type Hops = u32;

/// Sentinel for nodes that no source reaches.
pub const UNREACHED: Hops = Hops::MAX;

/// A coordinate value: an integer hop count or a real-valued distance.
///
/// Every implementor reserves one value, [`Distance::UNREACHED`], for "no
/// path". Integers use their maximum, floats use positive infinity.
pub trait Distance:
    Num + NumCast + Copy + PartialOrd + Debug + Display + Default + Send + Sync + 'static
{
    const UNREACHED: Self;

    /// True for integer types; decides the interchange encoding.
    const INTEGRAL: bool;

    #[inline]
    fn is_unreached(self) -> bool {
        self == Self::UNREACHED
    }

    #[inline]
    fn from_hops(h: Hops) -> Self {
        if h == UNREACHED {
            Self::UNREACHED
        } else {
            <Self as NumCast>::from(h).expect("hop count fits every coordinate type")
        }
    }

    /// `|a - b|` without underflow on unsigned types.
    #[inline]
    fn abs_diff(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            other - self
        }
    }

    /// Lossy view as `f64`; UNREACHED maps to infinity.
    #[inline]
    fn as_f64(self) -> f64 {
        if self.is_unreached() {
            f64::INFINITY
        } else {
            self.to_f64().unwrap_or(f64::NAN)
        }
    }
}

macro_rules! impl_int_distance {
    ($($t:ty),*) => {$(
        impl Distance for $t {
            const UNREACHED: Self = <$t>::MAX;
            const INTEGRAL: bool = true;
        }
    )*};
}

macro_rules! impl_float_distance {
    ($($t:ty),*) => {$(
        impl Distance for $t {
            const UNREACHED: Self = <$t>::INFINITY;
            const INTEGRAL: bool = false;
        }
    )*};
}

impl_int_distance!(u16, u32, u64);
impl_float_distance!(f32, f64);

/// Formats a coordinate the way the text outputs expect (`inf` for UNREACHED).
pub fn display_distance<T: Distance>(d: T) -> String {
    if d.is_unreached() {
        "inf".to_string()
    } else {
        d.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinels() {
        assert!(u32::from_hops(UNREACHED).is_unreached());
        assert!(f64::from_hops(UNREACHED).is_unreached());
        assert_eq!(f64::from_hops(7), 7.0);
        assert_eq!(u64::from_hops(7), 7);
        assert_eq!(display_distance(f32::UNREACHED), "inf");
        assert_eq!(display_distance(3u32), "3");
    }

    #[test]
    fn abs_diff_is_symmetric_on_unsigned() {
        assert_eq!(2u32.abs_diff(5), 3);
        assert_eq!(5u32.abs_diff(2), 3);
        assert_eq!(Distance::abs_diff(1.5f64, 4.0), 2.5);
    }
}
