use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::classgroup::{class_group, IdealClassGroup};
use super::field::{Elem, ImagQuadField};
use super::forms::QuadForm;
use super::ideal::Ideal;
use super::NumberFieldError;
use crate::abgroup::{abelian_from_table, AbHom, Cokernel, FgAbGroup, IntMatrix};
use crate::guard::SizeGuard;

/// `(O_F / J)^x` with discrete logarithms.
#[derive(Clone, Debug)]
pub struct ResidueUnits {
    pub modulus: Ideal,
    pub group: FgAbGroup,
    /// Canonical residues of the units.
    pub elements: Vec<Elem>,
    /// Residues realizing the canonical generators.
    pub generators: Vec<Elem>,
    log: Vec<Vec<BigInt>>,
    position: HashMap<usize, usize>,
}

impl ResidueUnits {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Canonical coordinates of the class of `e`, if it is a unit mod `J`.
    pub fn log_of(&self, e: &Elem) -> Option<Vec<BigInt>> {
        let k = self.modulus.residue_index(e);
        self.position.get(&k).map(|&i| self.log[i].clone())
    }
}

/// Enumerates residues coprime to `J` and reads the group structure off
/// their multiplication table.
pub fn residue_units(f: &ImagQuadField, j: &Ideal, guard: SizeGuard) -> Result<ResidueUnits, NumberFieldError> {
    let n = j.norm();
    guard.check(format!("residues modulo {j}"), n.to_u128().unwrap_or(u128::MAX))?;
    let n = n.to_usize().expect("guarded");
    let elements: Vec<Elem> = (0..n)
        .map(|k| j.residue_at(k))
        .filter(|e| Ideal::principal(f, e).map_or(j.is_unit(), |p| p.sum(f, j).is_unit()))
        .collect();
    let position: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, e)| (j.residue_index(e), i)).collect();
    let u = elements.len();
    guard.check(format!("unit table modulo {j}"), (u as u128) * (u as u128))?;
    let one = position[&j.residue_index(&Elem::one())];
    let mut table = vec![0; u * u];
    for a in 0..u {
        for b in 0..u {
            table[a * u + b] = position[&j.residue_index(&f.mul(&elements[a], &elements[b]))];
        }
    }
    let fa = abelian_from_table(u, one, |a, b| table[a * u + b]);
    Ok(ResidueUnits {
        modulus: j.clone(),
        group: fa.group,
        generators: fa.generators.iter().map(|&g| elements[g].clone()).collect(),
        elements,
        log: fa.log,
        position,
    })
}

/// `Cl_J`: ideals coprime to `J` modulo principal ideals `(a)` with
/// `a = 1 mod J`.
#[derive(Clone, Debug)]
pub struct RayClassGroup {
    pub field: ImagQuadField,
    pub modulus: Ideal,
    pub group: FgAbGroup,
    pub residue_units: FgAbGroup,
    /// Order of the image of `O_F^x` in `(O_F/J)^x`.
    pub unit_image_order: BigInt,
    pub class_group: FgAbGroup,
    /// `(O_F/J)^x -> Cl_J`.
    pub from_residues: AbHom,
    /// `Cl_J -> Cl`.
    pub to_class_group: AbHom,
    /// Ideals coprime to `J` representing the canonical class generators.
    pub class_representatives: Vec<Ideal>,
}

/// A primitive ideal coprime to `J` in class `target`, found among ideals
/// of increasing norm.
fn coprime_representative(cl: &IdealClassGroup, target: usize, jn: &BigInt) -> Ideal {
    let d = cl.field.discriminant();
    let mut a = 1i64;
    loop {
        if jn.gcd(&BigInt::from(a)) == BigInt::from(1) {
            for b in 0..2 * a {
                if (b * b - d) % (4 * a) == 0 {
                    let q = QuadForm::new(a, b, (b * b - d) / (4 * a));
                    if cl.index_of(&q) == Some(target) {
                        return Ideal::of_form(&cl.field, &q);
                    }
                }
            }
        }
        a += 1;
    }
}

/// Presented by residue generators and class representatives: residue
/// orders, images of global units, and `h_j [a_j] = [alpha_j]` where
/// `a_j^{h_j} = (alpha_j)`.
pub fn ray_class_group(f: &ImagQuadField, j: &Ideal, guard: SizeGuard) -> Result<RayClassGroup, NumberFieldError> {
    let cl = class_group(f.discriminant())?;
    let ru = residue_units(f, j, guard)?;
    let k = ru.group.ngens();
    let m = cl.group.ngens();
    let jn = j.norm();
    let reps: Vec<Ideal> = cl.generators.iter().map(|&g| coprime_representative(&cl, g, &jn)).collect();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..k {
        let mut c = vec![BigInt::zero(); k + m];
        c[i] = ru.group.generator_order(i);
        cols.push(c);
    }
    let unit_logs: Vec<Vec<BigInt>> = f.units().iter().map(|e| ru.log_of(e).expect("units stay units")).collect();
    for l in &unit_logs {
        let mut c = l.clone();
        c.resize(k + m, BigInt::zero());
        cols.push(c);
    }
    for (t, rep) in reps.iter().enumerate() {
        let h = cl.group.generator_order(t);
        let alpha = rep
            .pow(f, h.to_u64().expect("small class group"))
            .generator(f)
            .expect("h-th power of a class generator is principal");
        let la = ru.log_of(&alpha).expect("coprime to the modulus");
        let mut c: Vec<BigInt> = la.iter().map(|v| -v).collect();
        c.resize(k + m, BigInt::zero());
        c[k + t] = h;
        cols.push(c);
    }
    let rel = IntMatrix::from_fn(k + m, cols.len(), |r, c| cols[c][r].clone());
    let ck = Cokernel::of(&rel);
    let group = ck.group.clone();
    let unit_part = IntMatrix::from_fn(k, k + unit_logs.len(), |r, c| {
        if c < k {
            if r == c {
                ru.group.generator_order(r)
            } else {
                BigInt::zero()
            }
        } else {
            unit_logs[c - k][r].clone()
        }
    });
    let quotient = Cokernel::of(&unit_part).group;
    let unit_image_order = ru.group.order().expect("finite") / quotient.order().expect("finite");
    let from_res = IntMatrix::from_fn(group.ngens(), k, |r, c| {
        let mut e = vec![BigInt::zero(); k + m];
        e[c] = BigInt::from(1);
        ck.coords(&e)[r].clone()
    });
    let from_residues = AbHom::new(ru.group.clone(), group.clone(), from_res).expect("well defined");
    let to_cl = IntMatrix::from_fn(m, group.ngens(), |r, c| ck.lift(c)[k + r].clone());
    let to_class_group = AbHom::new(group.clone(), cl.group.clone(), to_cl).expect("well defined");
    Ok(RayClassGroup {
        field: f.clone(),
        modulus: j.clone(),
        group,
        residue_units: ru.group,
        unit_image_order,
        class_group: cl.group,
        from_residues,
        to_class_group,
        class_representatives: reps,
    })
}

/// Roots of unity congruent to 1 modulo `J`, as a cyclic group.
pub fn units_congruent_to_one(f: &ImagQuadField, j: &Ideal) -> FgAbGroup {
    let one = Elem::one();
    let count = f.units().iter().filter(|u| j.contains(&u.sub(&one))).count();
    FgAbGroup::cyclic(count as i64)
}
