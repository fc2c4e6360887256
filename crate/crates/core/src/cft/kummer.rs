use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::report::Report;
use super::tables::Table;
use super::CftError;
use crate::abgroup::{Cokernel, FgAbGroup, IntMatrix};
use crate::numberfield::{class_group, ImagQuadField};

/// Cohomology of `mu_n` on `Spec O_F` from the Kummer sequence and the
/// vanishing of `H^2(O_F, G_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerCohomology {
    pub d: i64,
    pub n: u64,
    /// `mu_n(F)`.
    pub h0: FgAbGroup,
    /// `O^x / n`, the subgroup in `H^1`.
    pub units_mod_n: FgAbGroup,
    /// `Cl[n]`, the quotient of `H^1`.
    pub class_torsion: FgAbGroup,
    /// For each canonical generator `c` of `Cl[n]` of order `k`, the unit
    /// `k x` in `O^x / n` for the chosen lift `x` of `c`.
    pub lift_obstructions: Vec<Vec<BigInt>>,
    pub h1: FgAbGroup,
    /// `H^1 = O^x/n + Cl[n]`.
    pub h1_split: bool,
    /// `Cl / n`.
    pub h2: FgAbGroup,
}

/// `H^0 = mu_n(F)`, `H^1` as the extension of `Cl[n]` by `O^x/n`, and
/// `H^2 = Cl/n`. Each `H^1` generator is lifted as a pair `(a, alpha)` with
/// `a^n = (alpha)`; the relation `k (a, alpha) = (alpha^k / gamma^n)` with
/// `a^k = (gamma)` resolves the extension.
pub fn kummer_cohomology(d: i64, n: u64) -> Result<KummerCohomology, CftError> {
    if n < 2 {
        return Err(CftError::BadLevel(n));
    }
    let f = ImagQuadField::new(d)?;
    let cl = class_group(d)?;
    let w = f.unit_count();
    let umul = move |a: usize, b: usize| (a + b) % w;
    let units = Table {
        size: w,
        identity: 0,
        mul: &umul,
    };
    let cmul = |a: usize, b: usize| cl.mul(a, b);
    let classes = Table {
        size: cl.class_number(),
        identity: 0,
        mul: &cmul,
    };
    let (h0, _) = units.torsion(n);
    let uq = units.quotient_by_powers(n);
    let (class_torsion, tgens) = classes.torsion(n);
    let h2 = classes.quotient_by_powers(n).group;

    let k1 = uq.group.ngens();
    let k2 = class_torsion.ngens();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..k1 {
        let mut c = vec![BigInt::zero(); k1 + k2];
        c[i] = uq.group.generator_order(i);
        cols.push(c);
    }
    let mut lift_obstructions = Vec::new();
    for (j, &c) in tgens.iter().enumerate() {
        let k = class_torsion.generator_order(j).to_u64().expect("small");
        let a = cl.ideal_of(c);
        let alpha = a.pow(&f, n).generator(&f).ok_or(CftError::Internal("a^n is not principal"))?;
        let gamma = a.pow(&f, k).generator(&f).ok_or(CftError::Internal("a^k is not principal"))?;
        let eps = f
            .exact_div(&f.pow(&alpha, k), &f.pow(&gamma, n))
            .ok_or(CftError::Internal("alpha^k / gamma^n is not integral"))?;
        let e = f.unit_log(&eps).ok_or(CftError::Internal("alpha^k / gamma^n is not a unit"))?;
        let le = uq.log_of(e).to_vec();
        let mut col: Vec<BigInt> = le.iter().map(|v| -v).collect();
        col.resize(k1 + k2, BigInt::zero());
        col[k1 + j] = BigInt::from(k);
        cols.push(col);
        lift_obstructions.push(le);
    }
    let rel = IntMatrix::from_fn(k1 + k2, cols.len(), |r, c| cols[c][r].clone());
    let h1 = Cokernel::of(&rel).group;
    let h1_split = h1 == uq.group.direct_sum(&class_torsion);
    Ok(KummerCohomology {
        d,
        n,
        h0,
        units_mod_n: uq.group,
        class_torsion,
        lift_obstructions,
        h1,
        h1_split,
        h2,
    })
}

impl KummerCohomology {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new(format!("kummer cohomology, n = {}", self.n), Some(self.d));
        r.value("H^0(mu_n) = mu_n(F)", &self.h0, "kummer_cohomology: roots of unity table");
        r.value("O^x / n", &self.units_mod_n, "kummer_cohomology: units modulo n-th powers");
        r.value("Cl[n]", &self.class_torsion, "kummer_cohomology: class group table");
        r.value("H^1(mu_n)", &self.h1, "kummer_cohomology: explicit lifts of Cl[n]");
        r.value("H^1 splits", self.h1_split, "kummer_cohomology");
        r.value("H^2(mu_n) = Cl / n", &self.h2, "kummer_cohomology: class group modulo n-th powers");
        let ord = |g: &FgAbGroup| g.order().expect("finite");
        r.check_eq(
            "|H^1| = |O^x/n| |Cl[n]|",
            &ord(&self.h1),
            &(ord(&self.units_mod_n) * ord(&self.class_torsion)),
            "kummer_cohomology",
        );
        r.check_eq("|H^2| = |Cl[n]|", &ord(&self.h2), &ord(&self.class_torsion), "kummer_cohomology");
        r.note("H^2(O_F, G_m) = 0 for totally imaginary F is taken as input, not recomputed");
        r
    }
}

/// `|H^2(O_F, mu_n)|` against `|Hom(Cl, Z/n)|`, the latter by enumerating
/// assignments on the canonical generators.
pub fn poitou_tate_order_check(d: i64, n: u64) -> Result<Report, CftError> {
    let k = kummer_cohomology(d, n)?;
    let cl = class_group(d)?;
    let orders: Vec<u64> = cl.group.torsion().iter().map(|t| t.to_u64().expect("small")).collect();
    let mut homs = 0u64;
    let total = (n as u128).pow(orders.len() as u32);
    for code in 0..total {
        let mut c = code;
        let ok = orders.iter().all(|&o| {
            let x = (c % n as u128) as u64;
            c /= n as u128;
            (x * o).is_multiple_of(n)
        });
        homs += ok as u64;
    }
    let h2 = k.h2.order().expect("finite");
    let mut r = Report::new(format!("Poitou-Tate order check, n = {n}"), Some(d));
    r.value("|H^2(O_F, mu_n)|", &h2, "kummer_cohomology: Cl/n");
    r.value("|Hom(Cl, Z/n)|", homs, "poitou_tate_order_check: enumeration of homomorphisms");
    r.check_eq("|H^2(mu_n)| = |H^1(Z/n)^dual|", &h2, &BigInt::from(homs), "poitou_tate_order_check");
    r.note("H^2(O_F, G_m) = 0 for totally imaginary F is taken as input, not recomputed");
    Ok(r)
}
