use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::{Elem, ImagQuadField};
use super::forms::QuadForm;
use super::NumberFieldError;

/// Nonzero integral ideal with Z-basis `{a, b + c w}` in Hermite form:
/// `a, c > 0`, `0 <= b < a`, `c | a`, `c | b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ideal {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, Elem::new(self.b.clone(), self.c.clone()))
    }
}

/// Upper triangular basis `(a, 0), (b, c)` of the lattice spanned by `vs`.
fn lattice_hnf(vs: &[Elem]) -> Option<(BigInt, BigInt, BigInt)> {
    let mut c = BigInt::zero();
    let mut top = Elem::zero();
    for v in vs {
        let e = c.extended_gcd(&v.y);
        if e.gcd.is_zero() {
            continue;
        }
        top = top.scale(&e.x).add(&v.scale(&e.y));
        c = e.gcd;
    }
    if c.is_zero() {
        return None;
    }
    if top.y.is_negative() {
        top = top.neg();
    }
    let c = top.y.clone();
    let mut a = BigInt::zero();
    for v in vs.iter().chain(std::iter::once(&top)) {
        let q = &v.y / &c;
        a = a.gcd(&(&v.x - q * &top.x));
    }
    if a.is_zero() {
        return None;
    }
    let b = top.x.mod_floor(&a);
    Some((a, b, c))
}

impl Ideal {
    pub fn from_hnf(f: &ImagQuadField, a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Ideal, NumberFieldError> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if !a.is_positive() || !c.is_positive() || b.is_negative() || b >= a {
            return Err(NumberFieldError::NotHermite);
        }
        let i = Ideal { a, b, c };
        let stable = i.basis().iter().all(|e| i.contains(&f.mul(&f.omega(), e)));
        if !stable {
            return Err(NumberFieldError::NotAnIdeal);
        }
        Ok(i)
    }

    /// The ideal generated by `gens`.
    pub fn from_gens(f: &ImagQuadField, gens: &[Elem]) -> Result<Ideal, NumberFieldError> {
        let w = f.omega();
        let span: Vec<Elem> = gens.iter().flat_map(|g| [g.clone(), f.mul(&w, g)]).collect();
        let (a, b, c) = lattice_hnf(&span).ok_or(NumberFieldError::ZeroIdeal)?;
        Ok(Ideal { a, b, c })
    }

    pub fn principal(f: &ImagQuadField, g: &Elem) -> Result<Ideal, NumberFieldError> {
        Self::from_gens(f, std::slice::from_ref(g))
    }

    pub fn unit() -> Ideal {
        Ideal {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    /// `(n)` for a positive integer `n`.
    pub fn rational(n: u64) -> Ideal {
        Ideal {
            a: BigInt::from(n),
            b: BigInt::zero(),
            c: BigInt::from(n),
        }
    }

    /// The ideal `[a, (-b + sqrt d)/2]` attached to a form.
    pub fn of_form(f: &ImagQuadField, q: &QuadForm) -> Ideal {
        let a = BigInt::from(q.a);
        let b = BigInt::from((-q.b - f.t()) / 2).mod_floor(&a);
        Ideal { a, b, c: BigInt::one() }
    }

    pub fn hnf(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn is_unit(&self) -> bool {
        self.a.is_one()
    }

    pub fn basis(&self) -> [Elem; 2] {
        [Elem::new(self.a.clone(), 0), Elem::new(self.b.clone(), self.c.clone())]
    }

    pub fn contains(&self, e: &Elem) -> bool {
        if !e.y.is_multiple_of(&self.c) {
            return false;
        }
        let q = &e.y / &self.c;
        (&e.x - q * &self.b).is_multiple_of(&self.a)
    }

    pub fn mul(&self, f: &ImagQuadField, o: &Ideal) -> Ideal {
        let gens: Vec<Elem> = self
            .basis()
            .iter()
            .flat_map(|x| o.basis().into_iter().map(move |y| (x.clone(), y)))
            .map(|(x, y)| f.mul(&x, &y))
            .collect();
        Self::from_gens(f, &gens).expect("products of nonzero ideals are nonzero")
    }

    pub fn pow(&self, f: &ImagQuadField, mut e: u64) -> Ideal {
        let mut base = self.clone();
        let mut acc = Ideal::unit();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// `self + o`.
    pub fn sum(&self, f: &ImagQuadField, o: &Ideal) -> Ideal {
        let gens: Vec<Elem> = self.basis().into_iter().chain(o.basis()).collect();
        Self::from_gens(f, &gens).expect("nonzero")
    }

    /// Canonical residue of `e` modulo `self`: `x + y w` with `0 <= x < a`
    /// and `0 <= y < c`.
    pub fn residue(&self, e: &Elem) -> Elem {
        let q = e.y.div_floor(&self.c);
        let y = &e.y - &q * &self.c;
        let x = (&e.x - q * &self.b).mod_floor(&self.a);
        Elem::new(x, y)
    }

    /// Index of a canonical residue in `0 .. norm`.
    pub fn residue_index(&self, e: &Elem) -> usize {
        let r = self.residue(e);
        (r.y * &self.a + r.x).to_usize().expect("residue index fits")
    }

    pub fn residue_at(&self, k: usize) -> Elem {
        let a = self.a.to_usize().expect("small modulus");
        Elem::new(k % a, k / a)
    }

    /// A reduced basis `(u, v)` and the reduced form `N(x u + y v) / N(I)`.
    /// The ideal is principal exactly when the form is the principal form,
    /// and then `u` generates it.
    pub fn reduced_basis(&self, f: &ImagQuadField) -> (QuadForm, Elem, Elem) {
        let n = self.norm();
        let [e1, e2] = self.basis();
        let mut u = e1;
        let mut v = e2.neg();
        loop {
            let a = f.norm(&u);
            let b = f.pairing(&u, &v);
            let c = f.norm(&v);
            if b <= -&a || b > a {
                let k = (&a - &b).div_floor(&(BigInt::from(2) * &a));
                v = v.add(&u.scale(&k));
                continue;
            }
            if a > c {
                let t = u;
                u = v;
                v = t.neg();
                continue;
            }
            if (a == c || b == -&a) && b.is_negative() {
                // (a, -b, a) -> (a, b, a) by the rotation (u, v) -> (v, -u)
                let t = u;
                u = v;
                v = t.neg();
                continue;
            }
            let q = QuadForm::new(
                (a / &n).to_i64().expect("reduced forms are small"),
                (b / &n).to_i64().expect("reduced forms are small"),
                (c / &n).to_i64().expect("reduced forms are small"),
            );
            return (q, u, v);
        }
    }

    pub fn reduced_form(&self, f: &ImagQuadField) -> QuadForm {
        self.reduced_basis(f).0
    }

    /// A generator if the ideal is principal.
    pub fn generator(&self, f: &ImagQuadField) -> Option<Elem> {
        let (q, u, _) = self.reduced_basis(f);
        (q == QuadForm::principal(f.discriminant())).then_some(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_basis_of_principal_ideals() {
        let f = ImagQuadField::new(-4).unwrap();
        let i = Ideal::principal(&f, &Elem::new(1, 1)).unwrap();
        assert_eq!(i.hnf(), (&BigInt::from(2), &BigInt::from(1), &BigInt::from(1)));
        assert_eq!(i.norm(), BigInt::from(2));
        assert_eq!(Ideal::principal(&f, &Elem::new(5, 0)).unwrap(), Ideal::rational(5));
    }

    #[test]
    fn non_ideal_lattices_are_rejected() {
        let f = ImagQuadField::new(-20).unwrap();
        assert!(Ideal::from_hnf(&f, 2, 1, 1).is_ok());
        assert!(Ideal::from_hnf(&f, 3, 0, 1).is_err());
    }

    #[test]
    fn principal_ideals_reduce_to_the_principal_form() {
        let f = ImagQuadField::new(-23).unwrap();
        for (x, y) in [(3, 1), (-7, 2), (11, -5)] {
            let g = Elem::new(x, y);
            let i = Ideal::principal(&f, &g).unwrap();
            let u = i.generator(&f).expect("principal");
            assert_eq!(Ideal::principal(&f, &u).unwrap(), i);
        }
        let p2 = Ideal::of_form(&f, &QuadForm::new(2, 1, 3));
        assert!(p2.generator(&f).is_none());
        assert!(p2.pow(&f, 3).generator(&f).is_some());
    }
}
