//! Finite-depth model of the inverse limit `lim← {[0,1], h}`.
//!
//! A [`Thread`] is a truncation `(x1, ..., xn)` of a point of the inverse limit:
//! `h(x_{i+1}) = x_i` holds exactly for every consecutive pair. Maps commuting
//! with `h` act on threads coordinatewise ([`InducedMap`]), and the induced map
//! of `h` itself is the shift.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_set::{separation, IntervalSet};
use crate::plmap::{
    commutator_defect, compose, fixed_points, image, point_preimage, preimage, PlMap,
};
use crate::rational::{format_rational, Rational, UnitRational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Thread {
    bonding: Arc<PlMap>,
    coords: Vec<UnitRational>,
}

impl Thread {
    /// Validates `h(x_{i+1}) = x_i` for every `i`.
    pub fn new(bonding: Arc<PlMap>, coords: Vec<UnitRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DepthTooSmall {
                depth: 0,
                required: 1,
            });
        }
        for (i, pair) in coords.windows(2).enumerate() {
            let image = bonding.eval(&pair[1]);
            if image != pair[0] {
                return Err(Error::InconsistentThread {
                    index: i + 1,
                    image: image.to_string(),
                    coord: pair[0].to_string(),
                });
            }
        }
        Ok(Thread { bonding, coords })
    }

    pub(crate) fn from_parts_unchecked(bonding: Arc<PlMap>, coords: Vec<UnitRational>) -> Self {
        Thread { bonding, coords }
    }

    pub fn bonding(&self) -> &Arc<PlMap> {
        &self.bonding
    }

    pub fn coords(&self) -> &[UnitRational] {
        &self.coords
    }

    pub fn depth(&self) -> usize {
        self.coords.len()
    }

    pub fn first(&self) -> &UnitRational {
        &self.coords[0]
    }
}

impl fmt::Debug for Thread {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Thread").field(&self.coords).finish()
    }
}

impl PartialOrd for Thread {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic by coordinates.
impl Ord for Thread {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords
            .cmp(&other.coords)
            .then_with(|| self.bonding.breakpoints().cmp(other.bonding.breakpoints()))
    }
}

pub fn make_thread(h: Arc<PlMap>, coords: Vec<UnitRational>) -> Result<Thread> {
    Thread::new(h, coords)
}

fn check_compatible(a: &Thread, b: &Thread) -> Result<()> {
    if a.depth() != b.depth() {
        return Err(Error::DepthMismatch(a.depth(), b.depth()));
    }
    if a.bonding != b.bonding {
        return Err(Error::BondingMismatch);
    }
    Ok(())
}

/// `Σ_{i=1..n} 2^{-i} |a_i − b_i|`.
pub fn thread_metric(a: &Thread, b: &Thread) -> Result<Rational> {
    check_compatible(a, b)?;
    let mut total = Rational::zero();
    let mut weight = Rational::one();
    let half = Rational::new(1.into(), 2.into());
    for (x, y) in a.coords.iter().zip(&b.coords) {
        weight *= &half;
        total += x.abs_diff(y).as_rational() * &weight;
    }
    Ok(total)
}

/// Depth-preserving shift `(h(x1), x1, ..., x_{n-1})`.
pub fn shift(t: &Thread) -> Thread {
    let mut coords = Vec::with_capacity(t.depth());
    coords.push(t.bonding.eval(t.first()));
    coords.extend_from_slice(&t.coords[..t.depth() - 1]);
    Thread::from_parts_unchecked(t.bonding.clone(), coords)
}

/// Drops the first coordinate.
pub fn unshift(t: &Thread) -> Result<Thread> {
    if t.depth() < 2 {
        return Err(Error::DepthTooSmall {
            depth: t.depth(),
            required: 2,
        });
    }
    Ok(Thread::from_parts_unchecked(
        t.bonding.clone(),
        t.coords[1..].to_vec(),
    ))
}

pub fn truncate(t: &Thread, depth: usize) -> Result<Thread> {
    if depth == 0 || depth > t.depth() {
        return Err(Error::BadDepth {
            requested: depth,
            depth: t.depth(),
        });
    }
    Ok(Thread::from_parts_unchecked(
        t.bonding.clone(),
        t.coords[..depth].to_vec(),
    ))
}

fn require_commuting(k: &PlMap, h: &PlMap) -> Result<()> {
    let defect = commutator_defect(k, h);
    if defect.value.is_zero() {
        Ok(())
    } else {
        Err(Error::NotCommuting {
            defect: format_rational(&defect.value),
            witness: defect.witness.to_string(),
        })
    }
}

/// A map `k` known to commute with a bonding map `h`, acting on `h`-threads.
#[derive(Clone, Debug)]
pub struct InducedMap {
    map: PlMap,
    bonding: Arc<PlMap>,
}

impl InducedMap {
    pub fn new(map: PlMap, bonding: Arc<PlMap>) -> Result<Self> {
        require_commuting(&map, &bonding)?;
        Ok(InducedMap { map, bonding })
    }

    pub fn map(&self) -> &PlMap {
        &self.map
    }

    /// `(k(x1), ..., k(xn))`, re-validated as a thread.
    pub fn apply(&self, t: &Thread) -> Result<Thread> {
        if *t.bonding != *self.bonding {
            return Err(Error::BondingMismatch);
        }
        let coords = t.coords.iter().map(|x| self.map.eval(x)).collect();
        Thread::new(t.bonding.clone(), coords)
    }
}

/// Applies `k` coordinatewise; refuses when `k` does not commute with the bonding map.
pub fn induce(k: &PlMap, t: &Thread) -> Result<Thread> {
    InducedMap::new(k.clone(), t.bonding.clone())?.apply(t)
}

/// Checker for the identities `F∘G = G∘F = shift` and `F∘G∘unshift = truncate`
/// on threads bonded by `h = f∘g`.
#[derive(Clone, Debug)]
pub struct MouronCheck {
    f: InducedMap,
    g: InducedMap,
}

impl MouronCheck {
    pub fn new(f: &PlMap, g: &PlMap) -> Result<Self> {
        require_commuting(f, g)?;
        let h = Arc::new(compose(f, g));
        Ok(MouronCheck {
            f: InducedMap::new(f.clone(), h.clone())?,
            g: InducedMap::new(g.clone(), h)?,
        })
    }

    pub fn bonding(&self) -> &Arc<PlMap> {
        &self.f.bonding
    }

    pub fn check(&self, t: &Thread) -> Result<bool> {
        if t.bonding != self.f.bonding {
            return Err(Error::BondingMismatch);
        }
        if t.depth() < 2 {
            return Err(Error::DepthTooSmall {
                depth: t.depth(),
                required: 2,
            });
        }
        let shifted = shift(t);
        let fg = self.f.apply(&self.g.apply(t)?)?;
        let gf = self.g.apply(&self.f.apply(t)?)?;
        if fg != shifted || gf != shifted {
            return Ok(false);
        }
        let back = self.f.apply(&self.g.apply(&unshift(t)?)?)?;
        Ok(back == truncate(t, t.depth() - 1)?)
    }
}

pub fn mouron_check(f: &PlMap, g: &PlMap, t: &Thread) -> Result<bool> {
    MouronCheck::new(f, g)?.check(t)
}

/// Projection of the fixed threads of an induced map onto each coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedThreadSet {
    pub per_coordinate: Vec<IntervalSet>,
    pub empty: bool,
    #[serde(serialize_with = "witness_coords")]
    pub witness: Option<Thread>,
}

fn witness_coords<S: serde::Serializer>(
    t: &Option<Thread>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match t {
        Some(t) => s.collect_seq(t.coords()),
        None => s.serialize_none(),
    }
}

impl FixedThreadSet {
    pub fn depth(&self) -> usize {
        self.per_coordinate.len()
    }

    /// Whether `t` lies in the set, given the seed (usually `Fix(k)`) it was built from.
    pub fn admits(&self, t: &Thread) -> bool {
        t.depth() == self.depth()
            && t.coords
                .iter()
                .zip(&self.per_coordinate)
                .all(|(x, s)| s.contains(x))
    }
}

/// Arc-consistent per-coordinate sets for threads `(x1..xn)` of `h` with every
/// coordinate in `seed`. The constraint graph is a chain, so one backward and
/// one forward sweep reach the fixpoint; the loop re-checks anyway.
pub fn propagate(h: &PlMap, seed: &IntervalSet, depth: usize) -> Vec<IntervalSet> {
    let mut sets = vec![seed.clone(); depth];
    loop {
        let before = sets.clone();
        for i in (0..depth.saturating_sub(1)).rev() {
            sets[i] = sets[i].intersection(&image(h, &sets[i + 1]));
        }
        for i in 0..depth.saturating_sub(1) {
            sets[i + 1] = sets[i + 1].intersection(&preimage(h, &sets[i]));
        }
        if sets == before {
            return sets;
        }
    }
}

/// Fixed threads of the map induced by `k` at a given depth, from the seed `Fix(k)`.
pub fn fixed_threads(k: &PlMap, h: &Arc<PlMap>, depth: usize) -> Result<FixedThreadSet> {
    require_commuting(k, h)?;
    fixed_threads_from(h, &fixed_points(k), depth)
}

/// [`fixed_threads`] for an explicit seed set.
pub fn fixed_threads_from(
    h: &Arc<PlMap>,
    seed: &IntervalSet,
    depth: usize,
) -> Result<FixedThreadSet> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let per_coordinate = propagate(h, seed, depth);
    let empty = per_coordinate.iter().any(IntervalSet::is_empty);
    let witness = if empty {
        None
    } else {
        select_witness(h, &per_coordinate)
    };
    Ok(FixedThreadSet {
        per_coordinate,
        empty,
        witness,
    })
}

/// Smallest-first selection through arc-consistent sets.
fn select_witness(h: &Arc<PlMap>, sets: &[IntervalSet]) -> Option<Thread> {
    let mut coords = vec![sets[0].min()?.clone()];
    for s in &sets[1..] {
        let prev = coords.last().expect("nonempty");
        let options = point_preimage(h, prev).intersection(s);
        coords.push(options.min()?.clone());
    }
    Thread::new(h.clone(), coords).ok()
}

/// Lower bound on the thread distance between `Fix(F)` and `Fix(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreadSeparation {
    pub depth: usize,
    /// `separation(Fix(f), Fix(g))`.
    #[serde(with = "crate::rational::serde_rational")]
    pub delta: Rational,
    /// `delta / 2`, from the first term of the metric alone.
    #[serde(with = "crate::rational::serde_rational")]
    pub bound: Rational,
    /// No thread is fixed by both induced maps at this depth.
    pub disjoint: bool,
}

pub fn fixed_thread_separation(
    f: &PlMap,
    g: &PlMap,
    h: &Arc<PlMap>,
    depth: usize,
) -> Result<ThreadSeparation> {
    require_commuting(f, h)?;
    require_commuting(g, h)?;
    let (fix_f, fix_g) = (fixed_points(f), fixed_points(g));
    if fix_f.is_empty() || fix_g.is_empty() {
        return Err(Error::EmptyFixedSet);
    }
    let delta = separation(&fix_f, &fix_g)?.distance;
    let common = fixed_threads_from(h, &fix_f.intersection(&fix_g), depth)?;
    Ok(ThreadSeparation {
        depth,
        bound: &delta / Rational::from_integer(2.into()),
        delta,
        disjoint: common.empty,
    })
}
