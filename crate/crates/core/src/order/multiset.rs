//! Dershowitz–Manna multiset extension.

use super::Comparison;

/// Compares two multisets under the multiset extension of `cmp`.
///
/// Elements that `cmp` reports as `Equal` are cancelled pairwise first; the
/// remainder of `a` dominates the remainder of `b` if every element left in
/// `b` is below some element left in `a`.
pub fn multiset_compare<T>(a: &[T], b: &[T], cmp: impl Fn(&T, &T) -> Comparison) -> Comparison {
    let mut a_left: Vec<&T> = a.iter().collect();
    let mut b_left: Vec<&T> = Vec::with_capacity(b.len());
    for y in b {
        match a_left.iter().position(|x| cmp(x, y) == Comparison::Equal) {
            Some(i) => {
                a_left.swap_remove(i);
            }
            None => b_left.push(y),
        }
    }
    match (a_left.is_empty(), b_left.is_empty()) {
        (true, true) => return Comparison::Equal,
        (false, true) => return Comparison::Greater,
        (true, false) => return Comparison::Less,
        _ => {}
    }
    let dominates = |big: &[&T], small: &[&T], want: Comparison| {
        small
            .iter()
            .all(|y| big.iter().any(|x| cmp(x, y) == want))
    };
    if dominates(&a_left, &b_left, Comparison::Greater) {
        Comparison::Greater
    } else if dominates(&b_left, &a_left, Comparison::Greater) {
        Comparison::Less
    } else {
        Comparison::Incomparable
    }
}
