use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::report::Report;
use super::CftError;
use crate::numberfield::{class_group, is_prime, prime_ideal_class, primes_below, PrimeClass};

const CATALOG: &str = include_str!("../../data/hilbert_class_fields.toml");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuratedField {
    pub d: i64,
    pub class_number: usize,
    /// Coefficients from the constant term up.
    pub poly: Vec<i64>,
    pub source: String,
}

#[derive(Deserialize)]
struct CatalogDoc {
    field: Vec<CuratedField>,
}

/// Discriminant of a monic cubic `x^3 + b x^2 + c x + e`.
fn cubic_discriminant(p: &[i64]) -> Option<i64> {
    if p.len() != 4 || p[3] != 1 {
        return None;
    }
    let (e, c, b) = (p[0], p[1], p[2]);
    Some(b * b * c * c - 4 * c * c * c - 4 * b * b * b * e - 27 * e * e + 18 * b * c * e)
}

/// The shipped pairs, each re-checked: the class number is an odd prime
/// equal to the degree and the polynomial discriminant is `d`.
pub fn curated_fields() -> &'static [CuratedField] {
    static FIELDS: OnceLock<Vec<CuratedField>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        let doc: CatalogDoc = toml::from_str(CATALOG).expect("curated catalog parses");
        for f in &doc.field {
            let h = class_group(f.d).expect("curated discriminant is fundamental").class_number();
            assert_eq!(h, f.class_number, "class number of {}", f.d);
            assert!(is_prime(h as u64) && h % 2 == 1 && f.poly.len() == h + 1);
            assert_eq!(cubic_discriminant(&f.poly), Some(f.d), "discriminant of the curated cubic for {}", f.d);
        }
        doc.field
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinReport {
    pub d: i64,
    pub poly: Vec<i64>,
    pub p_max: u64,
    pub tested: usize,
    pub agreements: usize,
    pub principal_split: usize,
    pub nonprincipal_split: usize,
    pub inert: usize,
    /// Primes dividing `d` times the polynomial discriminant.
    pub excluded: Vec<u64>,
    pub disagreements: Vec<u64>,
}

impl ArtinReport {
    pub fn pass(&self) -> bool {
        self.disagreements.is_empty() && self.agreements == self.tested
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new(format!("splitting law below {}", self.p_max), Some(self.d));
        r.value("polynomial", poly_string(&self.poly), "curated catalog");
        r.value("primes tested", self.tested, "artin_pi0_check");
        r.value("principal split", self.principal_split, "prime_ideal_class");
        r.value("non-principal split", self.nonprincipal_split, "prime_ideal_class");
        r.value("inert", self.inert, "prime_ideal_class");
        r.value("excluded", format!("{:?}", self.excluded), "artin_pi0_check");
        r.check(
            "class of p matches root count mod p",
            format!("{}/{}", self.agreements, self.tested),
            "100%",
            self.pass(),
            "artin_pi0_check: root count mod p against form classes",
        );
        r
    }
}

pub fn poly_string(p: &[i64]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        let mag = c.unsigned_abs();
        let body = if mag == 1 && k > 0 { mono } else { format!("{mag}{mono}") };
        let sign = if c < 0 { "-" } else { "+" };
        terms.push((sign, body));
    }
    let mut out = String::new();
    for (i, (s, b)) in terms.iter().enumerate() {
        if i == 0 {
            if *s == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {s} "));
        }
        out.push_str(b);
    }
    out
}

fn roots_mod_p(poly: &[i64], p: u64) -> usize {
    let p = p as i128;
    let coeffs: Vec<i128> = poly.iter().map(|&c| (c as i128).rem_euclid(p)).collect();
    (0..p)
        .filter(|&x| coeffs.iter().rev().fold(0i128, |acc, &c| (acc * x + c) % p) == 0)
        .count()
}

/// For every prime `p < p_max` not dividing `d disc(poly)`: `p` splits into
/// principal primes exactly when the polynomial has `h` roots mod `p`;
/// non-principal split primes give no root and inert primes exactly one.
pub fn artin_pi0_check(d: i64, poly: &[i64], p_max: u64) -> Result<ArtinReport, CftError> {
    let curated = curated_fields()
        .iter()
        .find(|f| f.d == d && f.poly == poly)
        .ok_or_else(|| CftError::NotCurated(format!("d = {d} with {}", poly_string(poly))))?;
    let h = curated.class_number;
    let cl = class_group(d)?;
    let disc = cubic_discriminant(poly).expect("curated");
    let mut rep = ArtinReport {
        d,
        poly: poly.to_vec(),
        p_max,
        tested: 0,
        agreements: 0,
        principal_split: 0,
        nonprincipal_split: 0,
        inert: 0,
        excluded: Vec::new(),
        disagreements: Vec::new(),
    };
    for p in primes_below(p_max) {
        if (d * disc) % p as i64 == 0 {
            rep.excluded.push(p);
            continue;
        }
        rep.tested += 1;
        let r = roots_mod_p(poly, p);
        let ok = match prime_ideal_class(&cl, p)? {
            PrimeClass::Split { order: 1, .. } => {
                rep.principal_split += 1;
                r == h
            }
            PrimeClass::Split { .. } => {
                rep.nonprincipal_split += 1;
                r == 0
            }
            PrimeClass::Inert => {
                rep.inert += 1;
                r == 1
            }
            PrimeClass::Ramified { .. } => false,
        };
        if ok {
            rep.agreements += 1;
        } else {
            rep.disagreements.push(p);
        }
    }
    Ok(rep)
}
