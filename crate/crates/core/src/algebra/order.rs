use std::cmp::Ordering;

use super::{Monomial, VarRing};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

impl OrderKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::DegRevLex => "degrevlex",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "degrevlex" | "deg-rev-lex" | "grevlex" => Ok(OrderKind::DegRevLex),
            other => Err(Error::Invalid(format!("unknown monomial order `{other}`"))),
        }
    }
}

/// A monomial order: lexicographic or graded reverse lexicographic with an
/// explicit variable priority.
///
/// `priority[0]` is the index of the highest variable, the last entry the
/// lowest. For `g < f < y < x` over the ring `(x, y, f, g)` the priority is
/// `[0, 1, 2, 3]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    /// When nonzero, `priority[..block]` forms an elimination block compared
    /// first by degrevlex; the rest follows `kind`.
    block: usize,
}

/// Sort key whose lexicographic comparison agrees with a [`MonomialOrder`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(Vec<i64>);

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= seen.len() || seen[p] {
                return Err(Error::Invalid(format!("variable priority {priority:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(MonomialOrder { kind, priority, block: 0 })
    }

    /// Declaration order: the first ring variable is highest.
    pub fn with_declaration_order(kind: OrderKind, arity: usize) -> Self {
        MonomialOrder { kind, priority: (0..arity).collect(), block: 0 }
    }

    pub fn lex(arity: usize) -> Self {
        Self::with_declaration_order(OrderKind::Lex, arity)
    }

    pub fn degrevlex(arity: usize) -> Self {
        Self::with_declaration_order(OrderKind::DegRevLex, arity)
    }

    /// Parse a chain such as `g<f<y<x` (lowest first) or `x>y>f>g`.
    pub fn from_chain(kind: OrderKind, ring: &VarRing, chain: &str) -> Result<Self> {
        let (mut names, ascending): (Vec<&str>, bool) = if chain.contains('<') {
            (chain.split('<').collect(), true)
        } else if chain.contains('>') {
            (chain.split('>').collect(), false)
        } else {
            (chain.split(',').collect(), false)
        };
        if ascending {
            names.reverse();
        }
        let priority = names
            .iter()
            .map(|n| {
                let n = n.trim();
                ring.index_of(n).or_else(|| ring.index_of(&format!("E[{n}]"))).ok_or_else(|| Error::UnknownVariable(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        if priority.len() != ring.len() {
            return Err(Error::Invalid(format!("variable order `{chain}` must list all {} ring variables", ring.len())));
        }
        Self::new(kind, priority)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn arity(&self) -> usize {
        self.priority.len()
    }

    /// Whether this is a block elimination order (see [`Self::block_elimination`]).
    pub fn is_block(&self) -> bool {
        self.block > 0
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.block > 0 {
            return self.key(a).cmp(&self.key(b));
        }
        let (ea, eb) = (a.exps(), b.exps());
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    if ea[v] != eb[v] {
                        return ea[v].cmp(&eb[v]);
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for &v in self.priority.iter().rev() {
                    if ea[v] != eb[v] {
                        return eb[v].cmp(&ea[v]);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn key(&self, m: &Monomial) -> OrderKey {
        let e = m.exps();
        let (high, low) = self.priority.split_at(self.block);
        let mut k = Vec::with_capacity(e.len() + 2);
        if !high.is_empty() {
            k.push(high.iter().map(|&v| e[v] as i64).sum());
            k.extend(high.iter().rev().map(|&v| -(e[v] as i64)));
        }
        match self.kind {
            OrderKind::Lex => k.extend(low.iter().map(|&v| e[v] as i64)),
            OrderKind::DegRevLex => {
                k.push(low.iter().map(|&v| e[v] as i64).sum());
                k.extend(low.iter().rev().map(|&v| -(e[v] as i64)));
            }
        }
        OrderKey(k)
    }

    /// The order with the variables `keep` (in ring order) retained and
    /// reindexed, preserving the relative priority.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let priority = self.priority.iter().filter_map(|v| keep.iter().position(|k| k == v)).collect();
        let block = self.priority[..self.block].iter().filter(|v| keep.contains(v)).count();
        MonomialOrder { kind: self.kind, priority, block }
    }

    /// Lex order with the `high` variables above all others; relative
    /// priority within each block follows this order.
    pub fn elimination(&self, high: &[usize]) -> Self {
        let mut priority: Vec<usize> = self.priority.iter().copied().filter(|v| high.contains(v)).collect();
        priority.extend(self.priority.iter().copied().filter(|v| !high.contains(v)));
        MonomialOrder { kind: OrderKind::Lex, priority, block: 0 }
    }

    /// Elimination order for the `high` variables: degrevlex on that block,
    /// ties broken by this order on the remaining variables.
    pub fn block_elimination(&self, high: &[usize]) -> Self {
        assert!(self.block == 0, "nested block orders are not supported");
        let mut priority: Vec<usize> = self.priority.iter().copied().filter(|v| high.contains(v)).collect();
        let block = priority.len();
        priority.extend(self.priority.iter().copied().filter(|v| !high.contains(v)));
        MonomialOrder { kind: self.kind, priority, block }
    }

    /// Order over a ring with `extra` new variables appended at the end, all
    /// placed above the existing ones.
    pub fn extended_on_top(&self, extra: usize) -> Self {
        let n = self.priority.len();
        let mut priority: Vec<usize> = (n..n + extra).collect();
        priority.extend(&self.priority);
        let block = if self.block > 0 { self.block + extra } else { 0 };
        MonomialOrder { kind: self.kind, priority, block }
    }

    /// Variable chain lowest-first, e.g. `g<f<y<x`.
    pub fn chain(&self, ring: &VarRing) -> String {
        let names: Vec<&str> = self.priority.iter().rev().map(|&v| ring.name(v)).collect();
        names.join("<")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn lex_examples() {
        // x y z^3 < x y^2 and y^2 z < x under z < y < x
        let ord = MonomialOrder::lex(3);
        assert_eq!(ord.cmp(&m(&[1, 1, 3]), &m(&[1, 2, 0])), Ordering::Less);
        assert_eq!(ord.cmp(&m(&[0, 2, 1]), &m(&[1, 0, 0])), Ordering::Less);
    }

    #[test]
    fn block_elimination_order() {
        // block {z} above degrevlex on (x, y)
        let ord = MonomialOrder::degrevlex(3).block_elimination(&[2]);
        assert!(ord.is_block());
        assert_eq!(ord.cmp(&m(&[5, 5, 0]), &m(&[0, 0, 1])), Ordering::Less);
        assert_eq!(ord.cmp(&m(&[2, 0, 1]), &m(&[0, 1, 1])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[1, 1, 0]), &m(&[2, 0, 0])), Ordering::Less);
        let r = ord.restrict(&[0, 1]);
        assert_eq!(r, MonomialOrder::degrevlex(2));
    }

    #[test]
    fn degrevlex_examples() {
        let ord = MonomialOrder::degrevlex(3);
        // x^2 z vs x y^2: same degree, z exponent decides; smaller z wins.
        assert_eq!(ord.cmp(&m(&[1, 2, 0]), &m(&[2, 0, 1])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn chain_parsing() {
        let ring = VarRing::new(["x", "y", "f", "g"]).unwrap();
        let ord = MonomialOrder::from_chain(OrderKind::Lex, &ring, "g<f<y<x").unwrap();
        assert_eq!(ord.priority(), &[0, 1, 2, 3]);
        assert_eq!(ord.chain(&ring), "g<f<y<x");
        assert!(MonomialOrder::from_chain(OrderKind::Lex, &ring, "g<f").is_err());
    }

    #[test]
    fn key_agrees_with_cmp() {
        let ords = [MonomialOrder::lex(3), MonomialOrder::degrevlex(3), MonomialOrder::new(OrderKind::DegRevLex, vec![2, 0, 1]).unwrap()];
        let mons = Monomial::all_up_to_degree(3, 3);
        for ord in &ords {
            for a in &mons {
                for b in &mons {
                    assert_eq!(ord.cmp(a, b), ord.key(a).cmp(&ord.key(b)));
                }
            }
        }
    }
}
