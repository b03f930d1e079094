use std::collections::HashMap;

use super::{Comparison, OrderingConfig};
use crate::term::{Term, Var};

fn weight(cfg: &OrderingConfig, t: &Term) -> u64 {
    match t {
        Term::Var(_) => cfg.var_weight,
        Term::App(f, args) => cfg.weight(*f) + args.iter().map(|a| weight(cfg, a)).sum::<u64>(),
    }
}

/// Every variable occurs in `s` at least as often as in `t`.
fn var_condition(s: &Term, t: &Term) -> bool {
    let mut counts: HashMap<Var, i64> = HashMap::new();
    s.var_counts(&mut counts, 1);
    t.var_counts(&mut counts, -1);
    counts.values().all(|&c| c >= 0)
}

pub(super) fn greater(cfg: &OrderingConfig, s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Var(_), _) => false,
        (_, Term::Var(x)) => s.occurs(*x),
        (Term::App(f, fa), Term::App(g, ga)) => {
            if !var_condition(s, t) {
                return false;
            }
            let (ws, wt) = (weight(cfg, s), weight(cfg, t));
            if ws != wt {
                return ws > wt;
            }
            if f != g {
                return cfg.prec_greater(*f, *g);
            }
            for (a, b) in fa.iter().zip(ga) {
                if a != b {
                    return greater(cfg, a, b);
                }
            }
            false
        }
    }
}

pub(super) fn compare(cfg: &OrderingConfig, s: &Term, t: &Term) -> Comparison {
    if s == t {
        Comparison::Equal
    } else if greater(cfg, s, t) {
        Comparison::Greater
    } else if greater(cfg, t, s) {
        Comparison::Less
    } else {
        Comparison::Incomparable
    }
}
