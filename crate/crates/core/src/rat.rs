//! Exact rational arithmetic on `i128`.
//!
//! Density computations on graphs with at most nine vertices per class stay
//! far below the `i128` range, so a fixed-width fraction is enough; every
//! operation is overflow-checked and panics loudly rather than wrapping.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    /// Builds `num/den`, reducing to lowest terms. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Rat {
        assert!(den != 0, "rational with zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den);
        if g == 0 {
            return Rat::ZERO;
        }
        Rat {
            num: sign * (num / g),
            den: (den / g).abs(),
        }
    }

    pub fn from_int(n: i128) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(self.num != 0, "reciprocal of zero");
        Rat::new(self.den, self.num)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        // a/b + c/d = (a*(l/b) + c*(l/d)) / l with l = lcm(b, d)
        let g = gcd(self.den, rhs.den);
        let l = (self.den / g).checked_mul(rhs.den).expect("rat overflow");
        let x = self
            .num
            .checked_mul(l / self.den)
            .and_then(|a| {
                rhs.num
                    .checked_mul(l / rhs.den)
                    .and_then(|b| a.checked_add(b))
            })
            .expect("rat overflow");
        Rat::new(x, l)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        self + (-rhs)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        // Cross-reduce first to keep intermediates small.
        let g1 = gcd(self.num, rhs.den);
        let g2 = gcd(rhs.num, self.den);
        let num = (self.num / g1)
            .checked_mul(rhs.num / g2)
            .expect("rat overflow");
        let den = (self.den / g2)
            .checked_mul(rhs.den / g1)
            .expect("rat overflow");
        Rat::new(num, den)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        self * rhs.recip()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        let l = self.num.checked_mul(other.den).expect("rat overflow");
        let r = other.num.checked_mul(self.den).expect("rat overflow");
        l.cmp(&r)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_orders() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(-2, -4), Rat::new(1, 2));
        assert_eq!(Rat::new(2, -4), Rat::new(-1, 2));
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
    }

    #[test]
    fn arithmetic() {
        let a = Rat::new(1, 6);
        let b = Rat::new(1, 10);
        assert_eq!(a + b, Rat::new(4, 15));
        assert_eq!(a - b, Rat::new(1, 15));
        assert_eq!(a * b, Rat::new(1, 60));
        assert_eq!(a / b, Rat::new(5, 3));
    }
}
