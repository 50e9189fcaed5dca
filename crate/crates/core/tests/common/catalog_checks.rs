//! Structural facts every right Bol loop of order 27 in the catalog must
//! satisfy. Each check returns a description of the first violation.

use bolkit::classify::are_isomorphic;
use bolkit::constructions::elementary_abelian_square;
use bolkit::invariants::{
    all_normal_subloops, center, commutant, derived_subloop, quotient, right_multiplication_group,
    SubloopSet,
};
use bolkit::permgroup::prime_divisors;
use bolkit::LoopTable;

pub type Check = fn(&LoopTable) -> Result<(), String>;

pub const CHECKS: [(&str, Check); 9] = [
    ("right inverse property", right_inverse_property),
    ("right power alternative, exponents -4..4", right_power_alternative),
    ("center trichotomy", center_trichotomy),
    ("normal subloops of order 3 are central", normal_order3_central),
    ("a normal subloop of order 9 exists", normal_order9_exists),
    ("trivial center forces |Q'| = 9", trivial_center_derived),
    ("|Z| = 3 or |Q'| = 3 forces Z = Q'", center_equals_derived),
    ("commutant is a subloop", commutant_is_subloop),
    ("same primes divide |Q| and |RMlt(Q)|", rmlt_primes),
];

pub fn right_inverse_property(q: &LoopTable) -> Result<(), String> {
    for y in q.elements() {
        let yi = q.inverse(y).map_err(|e| e.to_string())?;
        for x in q.elements() {
            if q.mul(q.mul(x, y), yi) != x {
                return Err(format!("(x y) y^-1 != x for x = {x}, y = {y}"));
            }
        }
    }
    Ok(())
}

pub fn right_power_alternative(q: &LoopTable) -> Result<(), String> {
    for y in q.elements() {
        let pw: Vec<usize> = (-8..=8).map(|k| q.power(y, k).unwrap()).collect();
        let at = |k: i64| pw[(k + 8) as usize];
        for x in q.elements() {
            for n in -4..=4 {
                for m in -4..=4 {
                    if q.mul(q.mul(x, at(n)), at(m)) != q.mul(x, at(n + m)) {
                        return Err(format!("fails for x = {x}, y = {y}, n = {n}, m = {m}"));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn center_trichotomy(q: &LoopTable) -> Result<(), String> {
    let z = center(q);
    if z.len() == 1 || (q.is_associative() && q.is_commutative()) {
        return Ok(());
    }
    let p = 3;
    if z.len() == p {
        let f = quotient(q, &z).map_err(|e| e.to_string())?;
        if are_isomorphic(&f, &elementary_abelian_square(p)).is_some() {
            return Ok(());
        }
    }
    Err(format!("|Z| = {} and Q is not an abelian group", z.len()))
}

pub fn normal_order3_central(q: &LoopTable) -> Result<(), String> {
    let z = center(q);
    for h in all_normal_subloops(q).iter().filter(|h| h.len() == 3) {
        if !h.is_subset_of(&z) {
            return Err(format!("normal subloop {:?} is not central", h.elements()));
        }
    }
    Ok(())
}

pub fn normal_order9_exists(q: &LoopTable) -> Result<(), String> {
    if all_normal_subloops(q).iter().any(|h| h.len() == 9) {
        Ok(())
    } else {
        Err("no normal subloop of order 9".into())
    }
}

pub fn trivial_center_derived(q: &LoopTable) -> Result<(), String> {
    let d = derived_subloop(q).len();
    if center(q).len() == 1 && d != 9 {
        return Err(format!("trivial center but |Q'| = {d}"));
    }
    Ok(())
}

pub fn center_equals_derived(q: &LoopTable) -> Result<(), String> {
    let z = center(q);
    let d = derived_subloop(q);
    if (z.len() == 3 || d.len() == 3) && z != d {
        return Err(format!("Z = {:?}, Q' = {:?}", z.elements(), d.elements()));
    }
    Ok(())
}

pub fn commutant_is_subloop(q: &LoopTable) -> Result<(), String> {
    SubloopSet::new(q, &commutant(q))
        .map(|_| ())
        .map_err(|e| format!("commutant is not closed: {e}"))
}

/// Primes dividing `|Q|` and `|RMlt(Q)|` agree.
pub fn rmlt_primes(q: &LoopTable) -> Result<(), String> {
    let a = prime_divisors(q.order() as u128);
    let b = prime_divisors(right_multiplication_group(q).order());
    if a == b {
        Ok(())
    } else {
        Err(format!("primes of |Q|: {a:?}, of |RMlt(Q)|: {b:?}"))
    }
}
