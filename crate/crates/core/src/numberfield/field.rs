use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::NumberFieldError;

/// Whether `d` is the discriminant of an imaginary quadratic field.
pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(-d),
        0 => {
            let e = -d / 4;
            matches!(e % 4, 1 | 2) && squarefree(e)
        }
        _ => false,
    }
}

fn squarefree(n: i64) -> bool {
    let mut k = 2i64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// All fundamental discriminants in `lo..=hi`, increasing.
pub fn fundamental_discriminants(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi.min(-1)).filter(|&d| is_fundamental(d)).collect()
}

/// `Q(sqrt d)` for a negative fundamental discriminant, with ring of
/// integers `Z[w]` where `w = sqrt(d)/2` or `(1 + sqrt d)/2`. `w` satisfies
/// `w^2 = t w - m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ImagQuadField {
    d: i64,
    t: i64,
    m: i64,
}

/// `x + y w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem {
    pub x: BigInt,
    pub y: BigInt,
}

impl Elem {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Elem {
        Elem { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Elem {
        Elem::new(0, 0)
    }

    pub fn one() -> Elem {
        Elem::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Elem) -> Elem {
        Elem::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        Elem::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &BigInt) -> Elem {
        Elem::new(&self.x * k, &self.y * k)
    }

    pub fn neg(&self) -> Elem {
        Elem::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => write!(f, "{}", self.x),
            (true, false) => write!(f, "{}w", self.y),
            (false, false) if self.y.is_negative() => write!(f, "{} - {}w", self.x, -&self.y),
            _ => write!(f, "{} + {}w", self.x, self.y),
        }
    }
}

impl ImagQuadField {
    pub fn new(d: i64) -> Result<Self, NumberFieldError> {
        if !is_fundamental(d) {
            return Err(NumberFieldError::NotFundamental(d));
        }
        let (t, m) = if d.rem_euclid(4) == 1 { (1, (1 - d) / 4) } else { (0, -d / 4) };
        Ok(ImagQuadField { d, t, m })
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    /// Trace of `w`.
    pub fn t(&self) -> i64 {
        self.t
    }

    /// Norm of `w`.
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn omega(&self) -> Elem {
        Elem::new(0, 1)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let yy = &a.y * &b.y;
        Elem::new(&a.x * &b.x - &yy * self.m, &a.x * &b.y + &b.x * &a.y + yy * self.t)
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = Elem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn conj(&self, a: &Elem) -> Elem {
        Elem::new(&a.x + &a.y * self.t, -&a.y)
    }

    pub fn norm(&self, a: &Elem) -> BigInt {
        &a.x * &a.x + &a.x * &a.y * self.t + &a.y * &a.y * self.m
    }

    /// `Tr(a conj(b))`; twice the norm on the diagonal.
    pub fn pairing(&self, a: &Elem, b: &Elem) -> BigInt {
        BigInt::from(2) * &a.x * &b.x + (&a.x * &b.y + &a.y * &b.x) * self.t + BigInt::from(2 * self.m) * &a.y * &b.y
    }

    /// `a / b` when it lies in the ring of integers.
    pub fn exact_div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        let n = self.norm(b);
        if n.is_zero() {
            return None;
        }
        let p = self.mul(a, &self.conj(b));
        let (qx, rx) = p.x.div_rem(&n);
        let (qy, ry) = p.y.div_rem(&n);
        (rx.is_zero() && ry.is_zero()).then(|| Elem::new(qx, qy))
    }

    /// Number of roots of unity.
    pub fn unit_count(&self) -> usize {
        match self.d {
            -4 => 4,
            -3 => 6,
            _ => 2,
        }
    }

    /// A generator of the roots of unity: `i`, a primitive sixth root, or
    /// `-1`.
    pub fn unit_generator(&self) -> Elem {
        match self.d {
            -4 | -3 => self.omega(),
            _ => Elem::new(-1, 0),
        }
    }

    /// `zeta^k` for `k = 0 .. w`.
    pub fn units(&self) -> Vec<Elem> {
        let g = self.unit_generator();
        let mut out = vec![Elem::one()];
        for _ in 1..self.unit_count() {
            let next = self.mul(out.last().expect("nonempty"), &g);
            out.push(next);
        }
        out
    }

    /// Exponent `k` with `u = zeta^k`, if `u` is a root of unity.
    pub fn unit_log(&self, u: &Elem) -> Option<usize> {
        self.units().iter().position(|v| v == u)
    }

    /// Kronecker symbol `(d / p)` for a prime `p`.
    pub fn kronecker(&self, p: u64) -> i32 {
        kronecker(self.d, p)
    }

    pub fn is_one(e: &Elem) -> bool {
        e.x.is_one() && e.y.is_zero()
    }
}

/// `(d / p)` for a prime `p`, with the usual convention at 2.
pub fn kronecker(d: i64, p: u64) -> i32 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let p = p as i64;
    let a = d.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    // Euler's criterion
    let mut r = 1i128;
    let mut b = a as i128;
    let mut e = (p - 1) / 2;
    let m = p as i128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Primes below `bound`.
pub fn primes_below(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut sieve = vec![true; n.max(2)];
    sieve[0] = false;
    if n > 1 {
        sieve[1] = false;
    }
    let mut k = 2;
    while k * k < n {
        if sieve[k] {
            for j in (k * k..n).step_by(k) {
                sieve[j] = false;
            }
        }
        k += 1;
    }
    (0..n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_discriminants_small() {
        let ds = fundamental_discriminants(-24, -1);
        assert_eq!(ds, vec![-24, -23, -20, -19, -15, -11, -8, -7, -4, -3]);
    }

    #[test]
    fn units_are_roots_of_unity() {
        for d in [-3, -4, -7] {
            let f = ImagQuadField::new(d).unwrap();
            let us = f.units();
            assert_eq!(us.len(), f.unit_count());
            for u in &us {
                assert_eq!(f.norm(u), BigInt::one());
                assert_eq!(f.pow(u, f.unit_count() as u64), Elem::one());
            }
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let f = ImagQuadField::new(-23).unwrap();
        let a = Elem::new(3, -2);
        let b = Elem::new(-1, 5);
        let p = f.mul(&a, &b);
        assert_eq!(f.exact_div(&p, &b), Some(a));
        assert_eq!(f.norm(&p), f.norm(&Elem::new(3, -2)) * f.norm(&b));
    }
}
