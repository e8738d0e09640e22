// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Closed-form cycle and K4-subdivision bounds, evaluated exactly, and a
//! report that compares them with enumerated counts.
//!
//! All arithmetic is on big integers and rationals; ceilings appear only in
//! the cubic lower bound and in the per-vertex factor of the pinned-neighbor
//! bound.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::connectivity::is_k_connected;
use crate::cycles::count_cycles;
use crate::ears::open_ear_decomposition;
use crate::error::{arg_err, Result};
use crate::graph::Graph;
use crate::k4::count_k4;

fn int(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `x (x - 1) / 2` for any integer `x`.
pub fn choose2(x: &BigInt) -> BigInt {
    x * (x - 1) / 2
}

/// `x (x - 1) / 2` for a rational `x`.
pub fn choose2_rational(x: &BigRational) -> BigRational {
    x * (x - BigRational::one()) / rat(2, 1)
}

/// Falling-factorial binomial `x (x-1) ... (x-k+1) / k!`.
pub fn binomial(x: u64, k: u64) -> BigUint {
    if k > x {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (x - i) / (i + 1);
    }
    acc
}

/// Number of ears of any open ear decomposition: `m - n + 1`.
pub fn ear_count_formula(n: usize, m: usize) -> i64 {
    m as i64 - n as i64 + 1
}

/// Cycle lower bound from the ear count: `binom(l + 1, 2)`.
pub fn cycle_bound_ears(ears: u64) -> Result<BigUint> {
    if ears < 1 {
        return arg_err("ear count must be at least 1");
    }
    Ok(binomial(ears + 1, 2))
}

/// Cycle lower bound for 2-connected graphs: `binom(m - n + 2, 2)`.
pub fn cycle_bound_nm(n: usize, m: usize) -> Result<BigUint> {
    if m < n {
        return arg_err(format!("a 2-connected graph has m >= n, got n={n}, m={m}"));
    }
    Ok(binomial((m - n + 2) as u64, 2))
}

/// Cycle lower bound from minimum degree, `binom(n (delta/2 - 1) + 2, 2)`,
/// evaluated as a rational binomial.
pub fn cycle_bound_min_degree(n: usize, delta: usize) -> Result<BigRational> {
    if delta < 2 {
        return arg_err("minimum degree bound needs delta >= 2");
    }
    let x = rat(n as i64, 1) * (rat(delta as i64, 2) - BigRational::one()) + rat(2, 1);
    Ok(choose2_rational(&x))
}

/// The same bound in its expanded polynomial form,
/// `(delta-2)^2 n^2 / 8 + 3 (delta-2) n / 4 + 1`.
pub fn cycle_bound_min_degree_expanded(n: usize, delta: usize) -> Result<BigRational> {
    if delta < 2 {
        return arg_err("minimum degree bound needs delta >= 2");
    }
    let d = int(delta as i64 - 2);
    let n = int(n as i64);
    Ok(rat(&d * &d * &n * &n, 8) + rat(3 * &d * &n, 4) + BigRational::one())
}

/// Cubic lower bound on the minimum number of K4-subdivisions of a
/// 3-connected graph on `n` vertices: `ceil(n^3/32 - n^2/16)`, clamped at 0.
pub fn phi_lower_cubic(n: usize) -> Result<BigUint> {
    if n < 4 {
        return arg_err(format!("3-connected graphs have at least 4 vertices, got {n}"));
    }
    let n = int(n as i64);
    let value = rat(&n * &n * &n, 32) - rat(&n * &n, 16);
    let ceil = value.ceil().to_integer();
    Ok(if ceil.is_negative() {
        BigUint::zero()
    } else {
        ceil.to_biguint().unwrap()
    })
}

/// K4-subdivision count of the wheel on `n` vertices, `binom(n - 1, 3)`.
pub fn phi_upper_wheel(n: usize) -> Result<BigUint> {
    if n < 4 {
        return arg_err(format!("wheels have at least 4 vertices, got {n}"));
    }
    Ok(binomial(n as u64 - 1, 3))
}

/// The printed expansion of the wheel bound, `n^3/6 - n^2 + 11n/6 + 1`.
/// It exceeds `binom(n - 1, 3)` by exactly 2.
pub fn phi_upper_printed_expansion(n: usize) -> BigRational {
    let n = int(n as i64);
    rat(&n * &n * &n, 6) - rat(&n * &n, 1) + rat(11 * &n, 6) + BigRational::one()
}

fn check_degrees(degrees: &[usize]) -> Result<(BigInt, BigInt)> {
    if degrees.is_empty() {
        return arg_err("empty degree sequence");
    }
    if let Some(&d) = degrees.iter().find(|&&d| d < 3) {
        return arg_err(format!("degree {d} below 3"));
    }
    let sum: usize = degrees.iter().sum();
    if !sum.is_multiple_of(2) {
        return arg_err("degree sum is odd");
    }
    let n = int(degrees.len() as i64);
    let m = int((sum / 2) as i64);
    // all degrees >= 3 already forces m >= 3n/2
    Ok((n, m))
}

/// Exact per-vertex cycle bound sum and the closed-form floor it is
/// relaxed to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSumBound {
    /// `sum_v binom(a - d_v + 1, 2)` with `a = m - n + 2`.
    pub exact: BigInt,
    /// `n^3/8 - n^2/4`.
    pub chain: BigRational,
}

pub fn cycle_sum_bound(degrees: &[usize]) -> Result<CycleSumBound> {
    let (n, m) = check_degrees(degrees)?;
    let a = &m - &n + 2;
    let exact = degrees
        .iter()
        .map(|&d| choose2(&(&a - d + 1)))
        .fold(BigInt::zero(), |acc, x| acc + x);
    let chain = rat(&n * &n * &n, 8) - rat(&n * &n, 4);
    Ok(CycleSumBound { exact, chain })
}

/// `ceil(binom(d, 2) / 3)`: subdivisions obtainable per cycle of `G - v`
/// by pinning two of the `d` neighbors of `v`.
pub fn pinned_factor(d: usize) -> BigInt {
    let pairs = choose2(&int(d as i64));
    let (q, r) = pairs.div_rem(&int(3));
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// `1/4 sum_v ceil(binom(d_v, 2)/3) binom(a - d_v + 1, 2)`.
pub fn star_bound(degrees: &[usize]) -> Result<BigRational> {
    let (n, m) = check_degrees(degrees)?;
    let a = &m - &n + 2;
    let sum = degrees
        .iter()
        .map(|&d| pinned_factor(d) * choose2(&(&a - d + 1)))
        .fold(BigInt::zero(), |acc, x| acc + x);
    Ok(rat(sum, 4))
}

/// `m/6 * binom(m/3, 2) * (m/n - 1/2)` for `m > 3n`.
pub fn phi_lower_m4n(n: usize, m: usize) -> Result<BigRational> {
    if n == 0 || m <= 3 * n {
        return arg_err(format!(
            "bound inapplicable for n={n}, m={m} (needs m > 3n); use phi_lower_cubic"
        ));
    }
    let (nn, mm) = (int(n as i64), int(m as i64));
    let third = rat(mm.clone(), 3);
    Ok(rat(mm.clone(), 6) * choose2_rational(&third) * (rat(mm, nn) - rat(1, 2)))
}

/// `n * sum d^2 >= (sum d)^2`.
pub fn cauchy_schwarz_holds(degrees: &[usize]) -> bool {
    let n = int(degrees.len() as i64);
    let sum: BigInt = degrees.iter().map(|&d| int(d as i64)).sum();
    let squares: BigInt = degrees.iter().map(|&d| int((d * d) as i64)).sum();
    n * squares >= &sum * &sum
}

/// A literal comparison `exact >= bound` (or `==` for the ear count).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub relation: &'static str,
    #[serde(serialize_with = "display_opt")]
    pub exact: Option<BigRational>,
    #[serde(serialize_with = "display_opt")]
    pub bound: Option<BigRational>,
    pub applicable: bool,
    /// `None` when inapplicable, or when a truncated count falls short of
    /// the bound and the outcome is unknown.
    pub holds: Option<bool>,
}

impl BoundCheck {
    fn inapplicable(name: &'static str, relation: &'static str) -> Self {
        BoundCheck {
            name,
            relation,
            exact: None,
            bound: None,
            applicable: false,
            holds: None,
        }
    }

    /// `exact >= bound`; a truncated `exact` is only a lower estimate.
    fn at_least(name: &'static str, exact: BigRational, truncated: bool, bound: BigRational) -> Self {
        let holds = if exact >= bound {
            Some(true)
        } else if truncated {
            None
        } else {
            Some(false)
        };
        BoundCheck {
            name,
            relation: ">=",
            exact: Some(exact),
            bound: Some(bound),
            applicable: true,
            holds,
        }
    }
}

/// Side-by-side comparison of exact counts for one graph with every bound
/// that applies to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<usize>,
    pub two_connected: bool,
    pub three_connected: bool,
    pub truncated: bool,
    pub ear_count: Option<usize>,
    #[serde(serialize_with = "display_opt")]
    pub cycle_count: Option<BigUint>,
    #[serde(serialize_with = "display_vec")]
    pub cycles_without_vertex: Vec<BigUint>,
    #[serde(serialize_with = "display_opt")]
    pub k4_count: Option<BigUint>,
    #[serde(serialize_with = "display_opt")]
    pub wheel_upper: Option<BigUint>,
    /// `k4_count - binom(n - 1, 3)`; informational only.
    #[serde(serialize_with = "display_opt")]
    pub conjecture_gap: Option<BigInt>,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    /// True when no applicable check failed or was left undecided.
    pub fn all_hold(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.applicable)
            .all(|c| c.holds == Some(true))
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn display_opt<T: fmt::Display, S: Serializer>(v: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

fn display_vec<T: fmt::Display, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ratio_of(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Evaluates every bound for `g` against exact counts (each enumeration
/// capped at `cap`). Bounds whose hypotheses `g` does not meet are listed
/// as inapplicable.
pub fn bound_report(g: &Graph, cap: u64) -> BoundReport {
    let n = g.vertex_count();
    let m = g.edge_count();
    let degrees = g.degrees();
    let two_connected = is_k_connected(g, 2);
    let three_connected = is_k_connected(g, 3);
    let mut truncated = false;
    let mut checks = Vec::new();

    let mut cycle_count = None;
    let mut ear_count = None;
    if two_connected {
        let ears = open_ear_decomposition(g).expect("2-connected").len();
        ear_count = Some(ears);
        let formula = ear_count_formula(n, m);
        checks.push(BoundCheck {
            name: "ear_count",
            relation: "==",
            exact: Some(ratio_of(ears as i64)),
            bound: Some(ratio_of(formula)),
            applicable: true,
            holds: Some(ears as i64 == formula),
        });
        let tally = count_cycles(g, cap);
        truncated |= tally.truncated;
        let cycles = ratio_of(tally.count);
        checks.push(BoundCheck::at_least(
            "cycles_from_ears",
            cycles.clone(),
            tally.truncated,
            ratio_of(cycle_bound_ears(ears as u64).unwrap()),
        ));
        checks.push(BoundCheck::at_least(
            "cycles_from_size",
            cycles.clone(),
            tally.truncated,
            ratio_of(cycle_bound_nm(n, m).unwrap()),
        ));
        checks.push(BoundCheck::at_least(
            "cycles_from_min_degree",
            cycles,
            tally.truncated,
            cycle_bound_min_degree(n, g.min_degree()).unwrap(),
        ));
        cycle_count = Some(BigUint::from(tally.count));
    } else {
        for name in ["ear_count", "cycles_from_ears", "cycles_from_size", "cycles_from_min_degree"] {
            checks.push(BoundCheck::inapplicable(name, ">="));
        }
    }

    let mut cycles_without_vertex = Vec::new();
    let mut k4_count = None;
    let mut wheel_upper = None;
    let mut conjecture_gap = None;
    if three_connected {
        let mut sum = BigInt::zero();
        let mut pinned_sum = BigInt::zero();
        let mut sum_truncated = false;
        for v in g.vertices() {
            let (h, _) = g.remove_vertex(v);
            let tally = count_cycles(&h, cap);
            sum_truncated |= tally.truncated;
            sum += tally.count;
            pinned_sum += pinned_factor(g.degree(v)) * tally.count;
            cycles_without_vertex.push(BigUint::from(tally.count));
        }
        truncated |= sum_truncated;
        let cs = cycle_sum_bound(&degrees).expect("3-connected degrees");
        checks.push(BoundCheck::at_least(
            "cycle_sum_exact",
            ratio_of(sum.clone()),
            sum_truncated,
            ratio_of(cs.exact),
        ));
        checks.push(BoundCheck::at_least("cycle_sum_chain", ratio_of(sum.clone()), sum_truncated, cs.chain));

        let k4 = count_k4(g, cap);
        truncated |= k4.truncated;
        let k4r = ratio_of(BigInt::from(k4.count.clone()));
        checks.push(BoundCheck::at_least(
            "cubic_lower",
            k4r.clone(),
            k4.truncated,
            ratio_of(BigInt::from(phi_lower_cubic(n).unwrap())),
        ));
        // a sum that was cut short is itself only a lower estimate, so the
        // derived bound is not certified either
        let fan = BoundCheck::at_least("fan_counting", k4r.clone(), k4.truncated, rat(sum, 4));
        let pinned = BoundCheck::at_least("pinned_counting", k4r.clone(), k4.truncated, rat(pinned_sum, 4));
        for mut c in [fan, pinned] {
            if sum_truncated && c.holds == Some(true) {
                c.holds = None;
            }
            checks.push(c);
        }
        checks.push(BoundCheck::at_least(
            "star_bound",
            k4r.clone(),
            k4.truncated,
            star_bound(&degrees).unwrap(),
        ));
        match phi_lower_m4n(n, m) {
            Ok(b) => checks.push(BoundCheck::at_least("m4n_lower", k4r, k4.truncated, b)),
            Err(_) => checks.push(BoundCheck::inapplicable("m4n_lower", ">=")),
        }
        let upper = phi_upper_wheel(n).unwrap();
        if !k4.truncated {
            conjecture_gap = Some(BigInt::from(k4.count.clone()) - BigInt::from(upper.clone()));
        }
        wheel_upper = Some(upper);
        k4_count = Some(k4.count);
    } else {
        for name in [
            "cycle_sum_exact",
            "cycle_sum_chain",
            "cubic_lower",
            "fan_counting",
            "pinned_counting",
            "star_bound",
            "m4n_lower",
        ] {
            checks.push(BoundCheck::inapplicable(name, ">="));
        }
    }

    checks.push(BoundCheck {
        name: "cauchy_schwarz",
        relation: ">=",
        exact: Some(ratio_of(
            int(n as i64) * degrees.iter().map(|&d| int((d * d) as i64)).sum::<BigInt>(),
        )),
        bound: Some(ratio_of(int((2 * m) as i64).pow(2))),
        applicable: n > 0,
        holds: (n > 0).then(|| cauchy_schwarz_holds(&degrees)),
    });

    BoundReport {
        n,
        m,
        degrees,
        two_connected,
        three_connected,
        truncated,
        ear_count,
        cycle_count,
        cycles_without_vertex,
        k4_count,
        wheel_upper,
        conjecture_gap,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, wheel};

    fn r(num: i64, den: i64) -> BigRational {
        rat(num, den)
    }

    #[test]
    fn ear_and_cycle_formulas() {
        assert_eq!(ear_count_formula(4, 6), 3);
        assert_eq!(ear_count_formula(9, 9), 1);
        assert_eq!(ear_count_formula(5, 6), 2);
        assert_eq!(cycle_bound_ears(1).unwrap(), 1u32.into());
        assert_eq!(cycle_bound_ears(3).unwrap(), 6u32.into());
        assert_eq!(cycle_bound_ears(4).unwrap(), 10u32.into());
        assert!(cycle_bound_ears(0).is_err());
        assert_eq!(cycle_bound_nm(5, 6).unwrap(), 3u32.into());
        assert_eq!(cycle_bound_nm(4, 6).unwrap(), 6u32.into());
        assert_eq!(cycle_bound_nm(7, 7).unwrap(), 1u32.into());
    }

    #[test]
    fn min_degree_bound() {
        assert_eq!(cycle_bound_min_degree(4, 3).unwrap(), r(6, 1));
        assert_eq!(cycle_bound_min_degree_expanded(4, 3).unwrap(), r(6, 1));
        assert_eq!(cycle_bound_min_degree(11, 2).unwrap(), r(1, 1));
        assert_eq!(cycle_bound_min_degree(8, 3).unwrap(), r(15, 1));
        // n (delta/2 - 1) not integral: binom(3.5, 2) = 3.5 * 2.5 / 2
        assert_eq!(cycle_bound_min_degree(3, 3).unwrap(), r(35, 8));
    }

    #[test]
    fn phi_bounds() {
        assert_eq!(phi_lower_cubic(4).unwrap(), 1u32.into());
        assert_eq!(phi_lower_cubic(8).unwrap(), 12u32.into());
        assert_eq!(phi_lower_cubic(5).unwrap(), 3u32.into());
        assert!(phi_lower_cubic(3).is_err());
        assert_eq!(phi_upper_wheel(4).unwrap(), 1u32.into());
        assert_eq!(phi_upper_wheel(5).unwrap(), 4u32.into());
        assert_eq!(phi_upper_wheel(9).unwrap(), 56u32.into());
    }

    #[test]
    fn printed_expansion_is_off_by_two() {
        for n in 4..60 {
            let direct = BigRational::from_integer(BigInt::from(phi_upper_wheel(n).unwrap()));
            assert_eq!(phi_upper_printed_expansion(n) - direct, r(2, 1));
        }
    }

    #[test]
    fn cycle_sum_examples() {
        let k4 = cycle_sum_bound(&[3, 3, 3, 3]).unwrap();
        assert_eq!(k4.exact, 4.into());
        assert_eq!(k4.chain, r(4, 1));
        assert_eq!(cycle_sum_bound(&[3; 8]).unwrap().chain, r(48, 1));
        assert!(cycle_sum_bound(&[3, 3, 2, 3]).is_err());
        assert!(cycle_sum_bound(&[3, 3, 3]).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_bound(&[3, 3, 3, 3]).unwrap(), r(1, 1));
        // W5: a = 8 - 5 + 2 = 5; hub: ceil(6/3)=2 * binom(2,2)=1 -> 2;
        // rim: ceil(3/3)=1 * binom(3,2)=3 -> 3 each; total (2 + 12)/4
        assert_eq!(star_bound(&[4, 3, 3, 3, 3]).unwrap(), r(14, 4));
        assert!(star_bound(&[1, 3, 3, 3]).is_err());
    }

    #[test]
    fn m4n_examples() {
        assert_eq!(phi_lower_m4n(10, 36).unwrap(), r(12276, 10));
        assert!(phi_lower_m4n(10, 31).unwrap() > r(0, 1));
        assert!(phi_lower_m4n(10, 30).is_err());
    }

    #[test]
    fn k4_report_has_equalities() {
        let rep = bound_report(&complete(4), u64::MAX);
        assert!(rep.all_hold());
        assert_eq!(rep.k4_count, Some(1u32.into()));
        let cubic = rep.check("cubic_lower").unwrap();
        assert_eq!(cubic.exact, cubic.bound);
        let star = rep.check("star_bound").unwrap();
        assert_eq!(star.exact, star.bound);
        let cs = rep.check("cycle_sum_chain").unwrap();
        assert_eq!(cs.exact, Some(r(4, 1)));
        assert_eq!(cs.bound, Some(r(4, 1)));
    }

    #[test]
    fn wheel_report_attains_upper() {
        let rep = bound_report(&wheel(5).unwrap(), u64::MAX);
        assert!(rep.all_hold());
        assert_eq!(rep.k4_count, rep.wheel_upper);
        assert_eq!(rep.conjecture_gap, Some(BigInt::zero()));
    }

    #[test]
    fn k23_report_marks_phi_inapplicable() {
        let rep = bound_report(&complete_bipartite(2, 3), u64::MAX);
        assert!(rep.two_connected && !rep.three_connected);
        let by_size = rep.check("cycles_from_size").unwrap();
        assert_eq!(by_size.exact, Some(r(3, 1)));
        assert_eq!(by_size.bound, Some(r(3, 1)));
        assert!(!rep.check("cubic_lower").unwrap().applicable);
        assert!(rep.all_hold());
    }
}
