//! Congruence closure over ground terms.

use std::collections::HashMap;

use crate::term::{Symbol, Term};

#[derive(Clone, Debug, Default)]
pub struct CongruenceClosure {
    ids: HashMap<Term, usize>,
    parent: Vec<usize>,
    nodes: Vec<Option<(Symbol, Vec<usize>)>>,
    dirty: bool,
}

impl CongruenceClosure {
    pub fn new() -> CongruenceClosure {
        CongruenceClosure::default()
    }

    pub fn from_equations<'a>(eqs: impl IntoIterator<Item = (&'a Term, &'a Term)>) -> CongruenceClosure {
        let mut cc = CongruenceClosure::new();
        for (s, t) in eqs {
            cc.merge(s, t);
        }
        cc
    }

    /// Registers a ground term and its subterms.
    pub fn add(&mut self, t: &Term) -> usize {
        if let Some(&id) = self.ids.get(t) {
            return id;
        }
        let node = match t {
            Term::Var(_) => None,
            Term::App(f, args) => Some((*f, args.iter().map(|a| self.add(a)).collect())),
        };
        let id = self.parent.len();
        self.parent.push(id);
        self.nodes.push(node);
        self.ids.insert(t.clone(), id);
        self.dirty = true;
        id
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub fn merge(&mut self, s: &Term, t: &Term) {
        let (a, b) = (self.add(s), self.add(t));
        if self.union(a, b) {
            self.dirty = true;
        }
    }

    fn close(&mut self) {
        while self.dirty {
            self.dirty = false;
            let mut sigs: HashMap<(Symbol, Vec<usize>), usize> = HashMap::new();
            for i in 0..self.nodes.len() {
                let Some((f, args)) = self.nodes[i].clone() else { continue };
                let key = (f, args.into_iter().map(|a| self.find(a)).collect());
                match sigs.get(&key) {
                    Some(&j) => {
                        if self.union(i, j) {
                            self.dirty = true;
                        }
                    }
                    None => {
                        sigs.insert(key, i);
                    }
                }
            }
        }
    }

    pub fn equal(&mut self, s: &Term, t: &Term) -> bool {
        if s == t {
            return true;
        }
        let (a, b) = (self.add(s), self.add(t));
        self.close();
        self.find(a) == self.find(b)
    }
}
