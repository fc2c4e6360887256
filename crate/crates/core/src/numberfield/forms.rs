use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::field::is_fundamental;
use super::NumberFieldError;

/// Positive definite binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `(1, 0, -d/4)` or `(1, 1, (1-d)/4)`.
    pub fn principal(d: i64) -> QuadForm {
        if d.rem_euclid(4) == 0 {
            QuadForm::new(1, 0, -d / 4)
        } else {
            QuadForm::new(1, 1, (1 - d) / 4)
        }
    }

    pub fn inverse(&self) -> QuadForm {
        QuadForm::new(self.a, -self.b, self.c).reduce()
    }

    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// The reduced form properly equivalent to `self`.
    pub fn reduce(&self) -> QuadForm {
        let (a, b, c) = reduce_wide(self.a as i128, self.b as i128, self.c as i128);
        QuadForm::new(a as i64, b as i64, c as i64)
    }

    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }
}

pub(crate) fn reduce_wide(mut a: i128, mut b: i128, mut c: i128) -> (i128, i128, i128) {
    assert!(a > 0 && b * b - 4 * a * c < 0, "positive definite forms only");
    loop {
        // b into (-a, a]
        if b <= -a || b > a {
            let k = Integer::div_floor(&(a - b), &(2 * a));
            c += k * (a * k + b);
            b += 2 * a * k;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if (a == c || b == -a) && b < 0 {
            b = -b;
        }
        return (a, b, c);
    }
}

/// Reduced forms of discriminant `d`, one per proper equivalence class,
/// sorted by `a`, then `|b|`, positive `b` first.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadForm>, NumberFieldError> {
    if !is_fundamental(d) {
        return Err(NumberFieldError::NotFundamental(d));
    }
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for babs in 0..=a {
            if (babs * babs - d) % (4 * a) != 0 {
                continue;
            }
            let c = (babs * babs - d) / (4 * a);
            if c < a {
                continue;
            }
            for b in [babs, -babs] {
                let f = QuadForm::new(a, b, c);
                if f.is_reduced() && !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        a += 1;
    }
    Ok(out)
}

/// Reduced representative of the Gauss composite `f g`.
pub fn compose_forms(f: &QuadForm, g: &QuadForm, d: i64) -> Result<QuadForm, NumberFieldError> {
    for h in [f, g] {
        if h.discriminant() != d {
            return Err(NumberFieldError::DiscriminantMismatch {
                form: *h,
                expected: d,
            });
        }
    }
    let (a, b, c) = compose_wide(
        (f.a as i128, f.b as i128, f.c as i128),
        (g.a as i128, g.b as i128, g.c as i128),
    );
    let (a, b, c) = reduce_wide(a, b, c);
    Ok(QuadForm::new(a as i64, b as i64, c as i64))
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    (e.x, e.y, e.gcd)
}

/// Dirichlet composition through united forms, unreduced.
pub(crate) fn compose_wide(f1: (i128, i128, i128), f2: (i128, i128, i128)) -> (i128, i128, i128) {
    let (mut f1, mut f2) = (f1, f2);
    if f1.0 > f2.0 {
        std::mem::swap(&mut f1, &mut f2);
    }
    let (a1, b1, _) = f1;
    let (a2, b2, c2) = f2;
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, d) = if a2 % a1 == 0 {
        (0, a1)
    } else {
        let (u, _, d) = xgcd(a2, a1);
        (u, d)
    };
    let (x2, y2, d1) = if s % d == 0 {
        (0, -1, d)
    } else {
        let (u, v, d1) = xgcd(s, d);
        (u, -v, d1)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
    (a3, b3, c3)
}

/// Class number by counting reduced forms along a different loop: over `b`
/// of the right parity, then every factorisation `a c = (b^2 - d)/4` with
/// `|b| <= a <= c`, applying the boundary rule explicitly.
pub fn class_number_enumerated(d: i64) -> usize {
    assert!(d < 0 && d.rem_euclid(4) <= 1);
    let mut h = 0usize;
    let bmax = ((-d / 3) as f64).sqrt() as i64 + 1;
    for b in -bmax..=bmax {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let ac = (b * b - d) / 4;
        let mut a = b.abs().max(1);
        while a * a <= ac {
            if ac % a == 0 {
                let c = ac / a;
                let boundary = b.abs() == a || a == c;
                let primitive = a.gcd(&b).gcd(&c) == 1;
                if primitive && (!boundary || b >= 0) {
                    h += 1;
                }
            }
            a += 1;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_reduced_forms() {
        assert_eq!(reduced_forms(-4).unwrap(), vec![QuadForm::new(1, 0, 1)]);
        assert_eq!(reduced_forms(-20).unwrap(), vec![QuadForm::new(1, 0, 5), QuadForm::new(2, 2, 3)]);
        assert_eq!(
            reduced_forms(-23).unwrap(),
            vec![QuadForm::new(1, 1, 6), QuadForm::new(2, 1, 3), QuadForm::new(2, -1, 3)]
        );
        assert!(reduced_forms(-12).is_err());
    }

    #[test]
    fn reduction_is_idempotent_and_keeps_discriminant() {
        let f = QuadForm::new(59, 61, 16);
        let r = f.reduce();
        assert!(r.is_reduced());
        assert_eq!(r.discriminant(), f.discriminant());
        assert_eq!(r.reduce(), r);
    }

    #[test]
    fn composition_spot_values() {
        let p = QuadForm::new(1, 0, 5);
        let q = QuadForm::new(2, 2, 3);
        assert_eq!(compose_forms(&p, &q, -20).unwrap(), q);
        assert_eq!(compose_forms(&q, &q, -20).unwrap(), p);
        let a = QuadForm::new(2, 1, 3);
        let b = QuadForm::new(2, -1, 3);
        assert_eq!(compose_forms(&a, &b, -23).unwrap(), QuadForm::new(1, 1, 6));
        assert!(compose_forms(&a, &p, -23).is_err());
    }
}
