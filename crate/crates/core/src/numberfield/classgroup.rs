use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::field::{is_prime, ImagQuadField};
use super::forms::{compose_forms, reduced_forms, QuadForm};
use super::ideal::Ideal;
use super::NumberFieldError;
use crate::abgroup::{abelian_from_table, FgAbGroup};

/// `Cl(O_F)` through reduced forms: the group law is composition, read off a
/// full Cayley table.
#[derive(Clone, Debug)]
pub struct IdealClassGroup {
    pub field: ImagQuadField,
    /// One reduced form per class; index 0 is the principal form.
    pub forms: Vec<QuadForm>,
    pub group: FgAbGroup,
    /// Canonical coordinates of each form's class.
    pub log: Vec<Vec<BigInt>>,
    /// Form indices realizing the canonical generators.
    pub generators: Vec<usize>,
    table: Vec<usize>,
    index: HashMap<QuadForm, usize>,
}

pub fn class_group(d: i64) -> Result<IdealClassGroup, NumberFieldError> {
    let field = ImagQuadField::new(d)?;
    let forms = reduced_forms(d)?;
    let h = forms.len();
    let index: HashMap<QuadForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut table = vec![0; h * h];
    for i in 0..h {
        for j in 0..h {
            let c = compose_forms(&forms[i], &forms[j], d)?;
            table[i * h + j] = index[&c];
        }
    }
    debug_assert_eq!(forms[0], QuadForm::principal(d));
    let fa = abelian_from_table(h, 0, |i, j| table[i * h + j]);
    Ok(IdealClassGroup {
        field,
        forms,
        group: fa.group,
        log: fa.log,
        generators: fa.generators,
        table,
        index,
    })
}

impl IdealClassGroup {
    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    /// Index of the class of any form of the right discriminant.
    pub fn index_of(&self, q: &QuadForm) -> Option<usize> {
        if q.discriminant() != self.field.discriminant() || q.a <= 0 {
            return None;
        }
        self.index.get(&q.reduce()).copied()
    }

    pub fn coords(&self, q: &QuadForm) -> Option<Vec<BigInt>> {
        self.index_of(q).map(|i| self.log[i].clone())
    }

    pub fn form_of(&self, coords: &[BigInt]) -> QuadForm {
        let mut c = coords.to_vec();
        self.group.reduce(&mut c);
        let i = self.log.iter().position(|l| *l == c).expect("coordinates of a class");
        self.forms[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.forms.len() + j]
    }

    pub fn class_of_ideal(&self, i: &Ideal) -> usize {
        self.index[&i.reduced_form(&self.field)]
    }

    pub fn order_of(&self, i: usize) -> usize {
        self.group.element_order(&self.log[i]).to_usize().expect("finite class group")
    }

    /// A representative ideal of each class: the ideal of its reduced form.
    pub fn ideal_of(&self, i: usize) -> Ideal {
        Ideal::of_form(&self.field, &self.forms[i])
    }
}

/// `O_F^x`: `Z/4`, `Z/6` or `Z/2`.
pub fn unit_group(d: i64) -> Result<FgAbGroup, NumberFieldError> {
    Ok(FgAbGroup::cyclic(ImagQuadField::new(d)?.unit_count() as i64))
}

/// Decomposition of a rational prime with the class of a prime above it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimeClass {
    Split { form: QuadForm, class: Vec<BigInt>, order: usize },
    Ramified { form: QuadForm, class: Vec<BigInt>, order: usize },
    Inert,
}

impl PrimeClass {
    /// Whether the primes above `p` are principal; inert primes always are.
    pub fn is_principal(&self) -> bool {
        match self {
            PrimeClass::Split { order, .. } | PrimeClass::Ramified { order, .. } => *order == 1,
            PrimeClass::Inert => true,
        }
    }
}

/// The class of a degree-one prime above `p`, from a form `(p, b, c)` of
/// discriminant `d`.
pub fn prime_ideal_class(cl: &IdealClassGroup, p: u64) -> Result<PrimeClass, NumberFieldError> {
    if !is_prime(p) {
        return Err(NumberFieldError::NotPrime(p));
    }
    let d = cl.field.discriminant();
    let k = cl.field.kronecker(p);
    if k == -1 {
        return Ok(PrimeClass::Inert);
    }
    let p = p as i64;
    let b = (0..2 * p).find(|b| (b * b - d) % (4 * p) == 0).expect("p splits or ramifies");
    let form = QuadForm::new(p, b, (b * b - d) / (4 * p));
    let i = cl.index_of(&form).expect("form of discriminant d");
    let class = cl.log[i].clone();
    let order = cl.order_of(i);
    Ok(if k == 0 {
        PrimeClass::Ramified { form, class, order }
    } else {
        PrimeClass::Split { form, class, order }
    })
}
