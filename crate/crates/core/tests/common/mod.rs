//! Fixtures and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use invlim_core::{compose, PlMap, Rational, UnitRational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn u(p: i64, q: i64) -> UnitRational {
    UnitRational::from_ratio(p, q)
}

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn tent() -> PlMap {
    PlMap::tent()
}

pub fn tent_iter(n: usize) -> PlMap {
    let t = tent();
    (1..n).fold(t.clone(), |acc, _| compose(&t, &acc))
}

pub fn halve() -> PlMap {
    PlMap::from_ratios(&[((0, 1), (0, 1)), ((1, 1), (1, 2))]).unwrap()
}

pub fn reflect() -> PlMap {
    PlMap::from_ratios(&[((0, 1), (1, 1)), ((1, 1), (0, 1))]).unwrap()
}

/// `1 - T`, fixing 1.
pub fn vee() -> PlMap {
    PlMap::from_ratios(&[((0, 1), (1, 1)), ((1, 2), (0, 1)), ((1, 1), (1, 1))]).unwrap()
}

/// Five pieces, `|slope| = 4` on every one.
pub fn steep() -> PlMap {
    PlMap::from_ratios(&[
        ((0, 1), (0, 1)),
        ((1, 4), (1, 1)),
        ((1, 2), (0, 1)),
        ((3, 4), (1, 1)),
        ((7, 8), (1, 2)),
        ((1, 1), (1, 1)),
    ])
    .unwrap()
}

pub fn random_unit<R: Rng>(rng: &mut R, max_den: i64) -> UnitRational {
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(0..=q);
    u(p, q)
}

/// Random PL map with at most `max_breakpoints` breakpoints. With `onto`, the
/// ordinates 0 and 1 are both attained.
pub fn random_plmap<R: Rng>(
    rng: &mut R,
    max_breakpoints: usize,
    max_den: i64,
    onto: bool,
) -> PlMap {
    let interior = rng.gen_range(0..=max_breakpoints - 2);
    let mut xs: Vec<UnitRational> = (0..interior)
        .map(|_| random_unit(rng, max_den))
        .filter(|x| !x.is_zero() && !x.is_one())
        .collect();
    xs.sort();
    xs.dedup();
    xs.insert(0, UnitRational::zero());
    xs.push(UnitRational::one());
    let mut ys: Vec<UnitRational> = xs.iter().map(|_| random_unit(rng, max_den)).collect();
    if onto {
        let n = ys.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if j == i {
            j = (i + 1) % n;
        }
        ys[i] = UnitRational::zero();
        ys[j] = UnitRational::one();
    }
    PlMap::new(xs.into_iter().zip(ys).collect()).unwrap()
}

/// Simplest rational (smallest denominator) in `[lo, hi]`, `0 <= lo <= hi`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let floor = lo.floor();
    if &floor == lo {
        return floor;
    }
    let ceil = &floor + Rational::one();
    if ceil <= *hi {
        return ceil;
    }
    let inner = simplest_between(&(hi - &floor).recip(), &(lo - &floor).recip());
    floor + inner.recip()
}

/// Fixed points of a map with only isolated fixed points, found without the
/// per-piece solver: scan the breakpoint grid for zeros and sign changes of
/// `m(x) - x`, bisect each bracket with exact rationals, snap to the simplest
/// rational in the final bracket and confirm by exact evaluation.
pub fn fixed_points_by_bisection(m: &PlMap) -> Vec<UnitRational> {
    let diff = |x: &Rational| {
        m.eval(&UnitRational::new(x.clone()).unwrap())
            .into_rational()
            - x
    };
    let grid: Vec<Rational> = m
        .breakpoints()
        .iter()
        .map(|(x, _)| x.as_rational().clone())
        .collect();
    let width = Rational::new(BigInt::one(), BigInt::one() << 80);
    let mut found = Vec::new();
    for (i, x) in grid.iter().enumerate() {
        if diff(x).is_zero() {
            found.push(x.clone());
        }
        let Some(next) = grid.get(i + 1) else { break };
        let (d0, d1) = (diff(x), diff(next));
        if d0.is_zero() || d1.is_zero() || d0.is_positive() == d1.is_positive() {
            continue;
        }
        let (mut lo, mut hi) = (x.clone(), next.clone());
        let lo_positive = d0.is_positive();
        while &hi - &lo > width {
            let mid = (&lo + &hi) / Rational::from_integer(2.into());
            let d = diff(&mid);
            if d.is_zero() {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if d.is_positive() == lo_positive {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let candidate = simplest_between(&lo, &hi);
        assert!(
            diff(&candidate).is_zero(),
            "bisection did not isolate an exact root"
        );
        found.push(candidate);
    }
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|x| UnitRational::new(x).unwrap())
        .collect()
}

/// Affine copy of `m` acting on `[a, c]`: breakpoints `(a + (c-a)x, a + (c-a)y)`.
fn conjugate_into(m: &PlMap, a: &Rational, c: &Rational) -> Vec<(Rational, Rational)> {
    let w = c - a;
    m.breakpoints()
        .iter()
        .map(|(x, y)| (a + &w * x.as_rational(), a + &w * y.as_rational()))
        .collect()
}

/// A bonding map `h` and maps `f`, `g` that each commute with `h` exactly and
/// have fixed sets in `[0, s]` and `[t, 1]` respectively.
///
/// `h` acts as a copy of `left` on `[0, s]`, the identity on `[s, t]` and a
/// copy of `right` on `[t, 1]`; `f` is a copy of `p` on `[0, s]` held constant
/// beyond `s`, `g` a copy of `q` on `[t, 1]` held constant before `t`. Requires
/// `left(1) = 1`, `right(0) = 0`, `p∘left = left∘p` and `q∘right = right∘q`.
pub struct SyntheticPair {
    pub h: Arc<PlMap>,
    pub f: PlMap,
    pub g: PlMap,
    pub gap: Rational,
}

pub fn synthetic_pair(
    left: &PlMap,
    p: &PlMap,
    right: &PlMap,
    q: &PlMap,
    s: Rational,
    t: Rational,
) -> SyntheticPair {
    let zero = Rational::zero();
    let one = Rational::one();

    let mut h_pts = conjugate_into(left, &zero, &s);
    let mut right_pts = conjugate_into(right, &t, &one);
    // left(1) = 1 and right(0) = 0 make the identity gap continuous.
    h_pts.append(&mut right_pts);
    let h = PlMap::from_rationals(h_pts).unwrap();

    let mut f_pts = conjugate_into(p, &zero, &s);
    let f_at_s = f_pts.last().unwrap().1.clone();
    f_pts.push((one.clone(), f_at_s));
    let f = PlMap::from_rationals(f_pts).unwrap();

    let mut g_pts = conjugate_into(q, &t, &one);
    let g_at_t = g_pts[0].1.clone();
    g_pts.insert(0, (zero, g_at_t));
    let g = PlMap::from_rationals(g_pts).unwrap();

    SyntheticPair {
        h: Arc::new(h),
        f,
        g,
        gap: t - s,
    }
}

/// At least 20 synthetic pairs over a spread of base maps and gaps.
pub fn synthetic_family() -> Vec<SyntheticPair> {
    let vee = vee();
    let vee2 = compose(&vee, &vee);
    let id = PlMap::identity();
    let t = tent();
    let t2 = compose(&t, &t);
    let lefts = [
        (vee.clone(), vee.clone()),
        (vee.clone(), vee2.clone()),
        (vee2.clone(), vee.clone()),
        (id.clone(), halve()),
    ];
    let rights = [
        (t.clone(), t.clone()),
        (t.clone(), t2.clone()),
        (t2, t.clone()),
        (steep(), steep()),
    ];
    let gaps = [(r(1, 3), r(1, 2)), (r(2, 5), r(3, 4))];
    let mut out = Vec::new();
    for (left, p) in &lefts {
        for (right, q) in &rights {
            for (s, t) in &gaps {
                out.push(synthetic_pair(left, p, right, q, s.clone(), t.clone()));
            }
        }
    }
    out
}
