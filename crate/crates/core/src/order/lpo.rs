use super::{Comparison, OrderingConfig};
use crate::term::Term;

pub(super) fn greater(cfg: &OrderingConfig, s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Var(_), _) => false,
        (_, Term::Var(x)) => s != t && s.occurs(*x),
        (Term::App(f, fa), Term::App(g, ga)) => {
            if fa.iter().any(|a| a == t || greater(cfg, a, t)) {
                return true;
            }
            if f == g {
                let all_below = ga.iter().all(|b| greater(cfg, s, b));
                if !all_below {
                    return false;
                }
                for (a, b) in fa.iter().zip(ga) {
                    if a != b {
                        return greater(cfg, a, b);
                    }
                }
                false
            } else {
                cfg.prec_greater(*f, *g) && ga.iter().all(|b| greater(cfg, s, b))
            }
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
