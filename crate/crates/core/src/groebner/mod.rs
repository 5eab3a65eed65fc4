//! Buchberger's algorithm and ideal-level operations over ℚ.

mod buchberger;
mod ideal;
mod intpoly;

pub use buchberger::{buchberger, buchberger_with_budget, DEFAULT_BUDGET};
pub use ideal::{eliminate, eliminate_named, ideal_equal, ideal_intersect, ideal_member, member_certificate, variety_is_finite};

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_poly, MonomialOrder, OrderKind, Polynomial, VarRing};
use crate::error::{Error, Result};

/// Generators of an ideal together with the monomial order they are
/// expressed in. When `reduced` is set the generators are the unique reduced
/// Gröbner basis for that order, sorted by descending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ring: VarRing,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    reduced: bool,
}

impl IdealBasis {
    pub fn new(ring: &VarRing, order: &MonomialOrder, generators: Vec<Polynomial>) -> Result<Self> {
        if order.arity() != ring.len() {
            return Err(Error::ArityMismatch { expected: ring.len(), got: order.arity() });
        }
        if generators.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(IdealBasis { ring: ring.clone(), order: order.clone(), generators, reduced: false })
    }

    pub(crate) fn from_reduced(ring: &VarRing, order: &MonomialOrder, generators: Vec<Polynomial>) -> Self {
        IdealBasis { ring: ring.clone(), order: order.clone(), generators, reduced: true }
    }

    /// The zero ideal ⟨0⟩, which has an empty reduced basis.
    pub fn zero(ring: &VarRing, order: &MonomialOrder) -> Self {
        Self::from_reduced(ring, order, Vec::new())
    }

    pub fn ring(&self) -> &VarRing {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.iter().all(Polynomial::is_zero)
    }

    /// The reduced Gröbner basis for this basis' own order.
    pub fn to_reduced(&self) -> Result<IdealBasis> {
        if self.reduced {
            Ok(self.clone())
        } else {
            buchberger(&self.ring, &self.generators, &self.order)
        }
    }

    /// Recomputes the reduced basis under another order over the same ring.
    pub fn with_order(&self, order: &MonomialOrder) -> Result<IdealBasis> {
        if self.reduced && *order == self.order {
            return Ok(self.clone());
        }
        buchberger(&self.ring, &self.generators, order)
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.format_with(&self.order)).collect()
    }

    pub fn to_json(&self) -> BasisJson {
        BasisJson {
            ring: self.ring.names().to_vec(),
            order: OrderJson {
                kind: self.order.kind().as_str().to_string(),
                priority: self.order.priority().iter().map(|&i| self.ring.name(i).to_string()).collect(),
            },
            generators: self.generator_strings(),
        }
    }

    /// Builds a (not yet reduced) basis from its JSON form.
    pub fn from_json(json: &BasisJson) -> Result<IdealBasis> {
        let ring = VarRing::new(json.ring.iter().cloned())?;
        let kind = OrderKind::parse(&json.order.kind)?;
        let order = if json.order.priority.is_empty() {
            MonomialOrder::with_declaration_order(kind, ring.len())
        } else {
            let priority = json.order.priority.iter().map(|n| ring.require(n)).collect::<Result<Vec<_>>>()?;
            MonomialOrder::new(kind, priority)?
        };
        let gens = json.generators.iter().map(|g| parse_poly(g, &ring)).collect::<Result<Vec<_>>>()?;
        IdealBasis::new(&ring, &order, gens)
    }
}

/// Serialized basis: `{"ring": [...], "order": {"kind": ..., "priority": [...]}, "generators": [...]}`.
///
/// `priority` lists variable names from highest to lowest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub ring: Vec<String>,
    pub order: OrderJson,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub kind: String,
    #[serde(default)]
    pub priority: Vec<String>,
}
