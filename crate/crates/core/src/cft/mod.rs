//! The arithmetic side assembled: Picard groupoid homotopy, idele class
//! groupoid data at a level, Kummer cohomology, order checks, the
//! verification report with its verified and predicted blocks, the
//! splitting-law check and the functoriality squares.

mod artin;
mod functoriality;
mod kummer;
pub mod report;
pub mod tables;
mod theorem;

pub use artin::{artin_pi0_check, curated_fields, ArtinReport, CuratedField};
pub use functoriality::{catalog_pairs, norm_transfer_report, SubgroupPair};
pub use kummer::{kummer_cohomology, poitou_tate_order_check, KummerCohomology};
pub use report::{Check, Prediction, Report, Value, REPORT_SCHEMA_VERSION};
pub use tables::{InverseSystem, Transition};
pub use theorem::{verify_main_theorem, PredictedBlock, TheoremReport, VerifiedBlock, DEFAULT_LEVELS};

use serde::Serialize;

use crate::abgroup::{profinite_complete, FgAbGroup, ProfiniteFgAb};
use crate::derivedab::DerivedError;
use crate::grouphomology::GroupError;
use crate::guard::{SizeGuard, SizeGuardExceeded};
use crate::numberfield::{class_group, ray_class_group, unit_group, units_congruent_to_one, Ideal, ImagQuadField, NumberFieldError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CftError {
    #[error("level {0} is not allowed; levels start at 2")]
    BadLevel(u64),
    #[error("no levels given")]
    NoLevels,
    #[error("not a curated Hilbert class field pair: {0}")]
    NotCurated(String),
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    NumberField(#[from] NumberFieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Derived(#[from] DerivedError),
    #[error(transparent)]
    SizeGuard(#[from] SizeGuardExceeded),
}

/// `pi_0 = Cl` and `pi_1 = O^x` of the Picard groupoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicHomotopy {
    pub d: i64,
    pub pi0: FgAbGroup,
    pub pi1: FgAbGroup,
    pub completed: Option<(ProfiniteFgAb, ProfiniteFgAb)>,
}

pub fn pic_homotopy(d: i64, complete: bool) -> Result<PicHomotopy, CftError> {
    let pi0 = class_group(d)?.group;
    let pi1 = unit_group(d)?;
    let completed = complete.then(|| (profinite_complete(&pi0), profinite_complete(&pi1)));
    Ok(PicHomotopy { d, pi0, pi1, completed })
}

/// `pi_0 = Cl_J` and `pi_1` = units congruent to 1 mod `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdeleClassGroupoidData {
    pub d: i64,
    pub modulus: Ideal,
    pub pi0: FgAbGroup,
    pub pi1: FgAbGroup,
}

pub fn idele_class_data(d: i64, j: &Ideal, guard: SizeGuard) -> Result<IdeleClassGroupoidData, CftError> {
    let f = ImagQuadField::new(d)?;
    let ray = ray_class_group(&f, j, guard)?;
    Ok(IdeleClassGroupoidData {
        d,
        modulus: j.clone(),
        pi0: ray.group,
        pi1: units_congruent_to_one(&f, j),
    })
}

impl PicHomotopy {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("Picard groupoid", Some(self.d));
        r.value("pi_0 = Cl", &self.pi0, "class_group");
        r.value("pi_1 = O^x", &self.pi1, "unit_group");
        if let Some((a, b)) = &self.completed {
            r.value("pi_0 completed", a, "profinite_complete");
            r.value("pi_1 completed", b, "profinite_complete");
        }
        r
    }
}

impl IdeleClassGroupoidData {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new(format!("idele class groupoid at level {}", self.modulus), Some(self.d));
        r.value("pi_0 = Cl_J", &self.pi0, "ray_class_group");
        r.value("pi_1 = units = 1 mod J", &self.pi1, "units_congruent_to_one");
        r
    }
}
