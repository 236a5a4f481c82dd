//! Certificates for commuting pairs and approximation sequences.
//!
//! A [`PairCertificate`] records, exactly, whether a pair `(f, g)` of PL maps
//! commutes, whether both maps are onto, and how far apart their fixed-point
//! sets are. When the pair commutes it also records, per requested depth,
//! whether the induced maps on the inverse limit of `h = f∘g` share a fixed
//! thread. A [`SequenceReport`] tracks the same quantities along a sequence of
//! pairs without saying anything about a limit.
//!
//! Both serialize to JSON with sorted keys and rationals as `"p/q"` strings.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_set::{separation, IntervalSet};
use crate::inverse_limit::fixed_threads_from;
use crate::plmap::{
    commutator_defect, compose_within, fixed_points, is_surjective, slope_profile, sup_dist,
    Distance, PlMap, SlopeProfile, Surjectivity,
};
use crate::rational::{ratio, Rational};

/// Default lower bound on `|slope|` for approximation stages.
pub fn default_slope_bound() -> Rational {
    ratio(3, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub breakpoint_budget: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            breakpoint_budget: 1 << 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub depth: usize,
    /// No thread is fixed by both induced maps.
    pub empty: bool,
    /// Lower bound on the thread distance between the two fixed-thread sets.
    #[serde(with = "crate::rational::serde_rational")]
    pub metric_bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reports", rename_all = "kebab-case")]
pub enum DepthReports {
    /// The pair does not commute, so the maps induce nothing on threads.
    NotApplicable,
    Computed(Vec<DepthReport>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCertificate {
    pub defect: Distance,
    pub surjective_f: Surjectivity,
    pub surjective_g: Surjectivity,
    pub fix_f: IntervalSet,
    pub fix_g: IntervalSet,
    #[serde(with = "crate::rational::serde_rational")]
    pub fix_separation: Rational,
    pub hypotheses_met: bool,
    pub max_denominator_bits: u64,
    pub depth_reports: DepthReports,
}

impl PairCertificate {
    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("certificate: {e}")))
    }
}

/// Pretty JSON with object keys in sorted order.
fn to_sorted_json<T: Serialize>(value: &T) -> String {
    // serde_json's default map is a BTreeMap, so a Value round trip sorts keys.
    let v = serde_json::to_value(value).expect("certificate types always serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn certify_pair(
    f: &PlMap,
    g: &PlMap,
    depths: &[usize],
    opts: &CertifyOptions,
) -> Result<PairCertificate> {
    if depths.is_empty() || depths.contains(&0) {
        return Err(Error::InvalidArgument(
            "depths must be nonempty and each at least 1".into(),
        ));
    }
    let fg = compose_within(f, g, opts.breakpoint_budget)?;
    let gf = compose_within(g, f, opts.breakpoint_budget)?;
    let defect = sup_dist(&fg, &gf);
    let surjective_f = is_surjective(f);
    let surjective_g = is_surjective(g);
    let fix_f = fixed_points(f);
    let fix_g = fixed_points(g);
    let fix_separation = separation(&fix_f, &fix_g)?.distance;
    let hypotheses_met = defect.value.is_zero()
        && surjective_f.surjective
        && surjective_g.surjective
        && fix_separation.is_positive();

    let depth_reports = if defect.value.is_zero() {
        let h = Arc::new(fg.clone());
        let common = fix_f.intersection(&fix_g);
        let bound = &fix_separation / Rational::from_integer(2.into());
        let reports = depths
            .iter()
            .map(|&depth| {
                Ok(DepthReport {
                    depth,
                    empty: fixed_threads_from(&h, &common, depth)?.empty,
                    metric_bound: bound.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DepthReports::Computed(reports)
    } else {
        DepthReports::NotApplicable
    };

    let max_denominator_bits = [
        f.max_denominator_bits(),
        g.max_denominator_bits(),
        fg.max_denominator_bits(),
        fix_f.max_denominator_bits(),
        fix_g.max_denominator_bits(),
        defect.witness.denom().bits(),
    ]
    .into_iter()
    .max()
    .unwrap_or(0);

    Ok(PairCertificate {
        defect,
        surjective_f,
        surjective_g,
        fix_f,
        fix_g,
        fix_separation,
        hypotheses_met,
        max_denominator_bits,
        depth_reports,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    StagesCommuteExactly,
    DefectsDecreasing,
    DefectsNonmonotone,
    SeparationCollapsing,
    SeparationBoundedBelow,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::StagesCommuteExactly => "stages-commute-exactly",
            Verdict::DefectsDecreasing => "defects-decreasing",
            Verdict::DefectsNonmonotone => "defects-nonmonotone",
            Verdict::SeparationCollapsing => "separation-collapsing",
            Verdict::SeparationBoundedBelow => "separation-bounded-below",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub k: usize,
    pub defect: Distance,
    #[serde(with = "crate::rational::serde_rational")]
    pub fix_separation: Rational,
    pub slopes_f: SlopeProfile,
    pub slopes_g: SlopeProfile,
    /// `sup_dist(f_k, f_{k+1})`; absent on the last stage.
    pub step_f: Option<Distance>,
    pub step_g: Option<Distance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CauchySummary {
    pub defects_nonincreasing: bool,
    pub separations_nonincreasing: bool,
    pub steps_f_nonincreasing: bool,
    pub steps_g_nonincreasing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub stages: Vec<StageRecord>,
    pub cauchy_summary: CauchySummary,
    /// One defect verdict followed by one separation verdict.
    pub verdicts: Vec<Verdict>,
}

impl SequenceReport {
    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("report: {e}")))
    }

    pub fn has(&self, v: Verdict) -> bool {
        self.verdicts.contains(&v)
    }
}

fn nonincreasing<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> bool {
    let v: Vec<&Rational> = values.into_iter().collect();
    v.windows(2).all(|w| w[1] <= w[0])
}

/// Per-stage exact metrics over a sequence of pairs `(f_k, g_k)`.
pub fn certify_sequence(
    stages: &[(PlMap, PlMap)],
    slope_bound: &Rational,
) -> Result<SequenceReport> {
    if stages.len() < 2 {
        return Err(Error::InvalidArgument("need at least 2 stages".into()));
    }
    let mut records = Vec::with_capacity(stages.len());
    for (k, (f, g)) in stages.iter().enumerate() {
        let next = stages.get(k + 1);
        records.push(StageRecord {
            k,
            defect: commutator_defect(f, g),
            fix_separation: separation(&fixed_points(f), &fixed_points(g))?.distance,
            slopes_f: slope_profile(f, slope_bound)?,
            slopes_g: slope_profile(g, slope_bound)?,
            step_f: next.map(|(f1, _)| sup_dist(f, f1)),
            step_g: next.map(|(_, g1)| sup_dist(g, g1)),
        });
    }

    let defects: Vec<&Rational> = records.iter().map(|r| &r.defect.value).collect();
    let separations: Vec<&Rational> = records.iter().map(|r| &r.fix_separation).collect();
    let cauchy_summary = CauchySummary {
        defects_nonincreasing: nonincreasing(defects.iter().copied()),
        separations_nonincreasing: nonincreasing(separations.iter().copied()),
        steps_f_nonincreasing: nonincreasing(
            records
                .iter()
                .filter_map(|r| r.step_f.as_ref().map(|d| &d.value)),
        ),
        steps_g_nonincreasing: nonincreasing(
            records
                .iter()
                .filter_map(|r| r.step_g.as_ref().map(|d| &d.value)),
        ),
    };

    let defect_verdict = if defects.iter().all(|d| d.is_zero()) {
        Verdict::StagesCommuteExactly
    } else if defects.windows(2).all(|w| w[1] < w[0]) {
        Verdict::DefectsDecreasing
    } else {
        Verdict::DefectsNonmonotone
    };
    let collapsing =
        separations.iter().any(|s| s.is_zero()) || separations.windows(2).any(|w| w[1] < w[0]);
    let separation_verdict = if collapsing {
        Verdict::SeparationCollapsing
    } else {
        Verdict::SeparationBoundedBelow
    };

    Ok(SequenceReport {
        stages: records,
        cauchy_summary,
        verdicts: vec![defect_verdict, separation_verdict],
    })
}
