//! The complete shuffle Baxter algebra, modeled as the product of its
//! homogeneous components and handled at a finite precision.
//!
//! A [`CompleteElement`] of precision N is known modulo Fil^{N+1}: it stores
//! the components of degree 0..=N and nothing else. Binary operations take
//! the smaller precision of their operands, so no coefficient is ever
//! invented.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::shuffle::{BaxterContext, ShuffleElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteElement {
    precision: usize,
    body: ShuffleElement,
}

impl CompleteElement {
    /// The image of a finite element, truncated to `precision`.
    pub fn embed(a: &ShuffleElement, precision: usize) -> CompleteElement {
        CompleteElement { precision, body: a.truncate_degree(precision) }
    }

    pub fn zero(ctx: &Arc<BaxterContext>, precision: usize) -> CompleteElement {
        CompleteElement { precision, body: ShuffleElement::zero(ctx) }
    }

    pub fn one(ctx: &Arc<BaxterContext>, precision: usize) -> CompleteElement {
        CompleteElement::embed(&ShuffleElement::one(ctx), precision)
    }

    /// Build from per-degree components. Each component must be homogeneous
    /// of its key's degree; components above `precision` are rejected.
    pub fn from_components(
        ctx: &Arc<BaxterContext>,
        precision: usize,
        components: BTreeMap<usize, ShuffleElement>,
    ) -> Result<CompleteElement> {
        let mut body = ShuffleElement::zero(ctx);
        for (d, comp) in components {
            if d > precision {
                return Err(Error::Precision { requested: d, available: precision });
            }
            if comp.terms().any(|(w, _)| w.degree() != d) {
                return Err(Error::Precondition(format!("component {d} is not homogeneous of degree {d}")));
            }
            body = body.add(&comp)?;
        }
        Ok(CompleteElement { precision, body })
    }

    /// `Σ_{n=0}^{N} cⁿ 1^{⊗(n+1)}`.
    pub fn geometric_unit_series(ctx: &Arc<BaxterContext>, c: &Coefficient, precision: usize) -> Result<CompleteElement> {
        if c.ring() != ctx.ring() {
            return Err(Error::RingMismatch { left: ctx.ring(), right: c.ring() });
        }
        let mut body = ShuffleElement::zero(ctx);
        let mut power = ctx.ring().one();
        for n in 0..=precision {
            body = body.add(&ShuffleElement::unit_word(ctx, n, power.clone()))?;
            power = &power * c;
        }
        Ok(CompleteElement { precision, body })
    }

    pub fn context(&self) -> &Arc<BaxterContext> {
        self.body.context()
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// All known components as one finite element.
    pub fn as_finite(&self) -> &ShuffleElement {
        &self.body
    }

    pub fn components(&self) -> BTreeMap<usize, ShuffleElement> {
        self.body.degree_components()
    }

    pub fn component(&self, degree: usize) -> Result<ShuffleElement> {
        if degree > self.precision {
            return Err(Error::Precision { requested: degree, available: self.precision });
        }
        Ok(self.body.component(degree))
    }

    /// Zero modulo Fil^{N+1}.
    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn truncate(&self, precision: usize) -> Result<CompleteElement> {
        if precision > self.precision {
            return Err(Error::Precision { requested: precision, available: self.precision });
        }
        Ok(CompleteElement { precision, body: self.body.truncate_degree(precision) })
    }

    fn common(&self, other: &CompleteElement) -> usize {
        self.precision.min(other.precision)
    }

    pub fn add(&self, other: &CompleteElement) -> Result<CompleteElement> {
        let p = self.common(other);
        let body = self.body.truncate_degree(p).add(&other.body.truncate_degree(p))?;
        Ok(CompleteElement { precision: p, body })
    }

    pub fn neg(&self) -> CompleteElement {
        CompleteElement { precision: self.precision, body: self.body.neg() }
    }

    pub fn sub(&self, other: &CompleteElement) -> Result<CompleteElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> Result<CompleteElement> {
        Ok(CompleteElement { precision: self.precision, body: self.body.scale(c)? })
    }

    /// The completed product. Degree d of the result only reads degrees ≤ d
    /// of the operands.
    pub fn mul(&self, other: &CompleteElement) -> Result<CompleteElement> {
        let p = self.common(other);
        let body = self.body.mul_truncated(&other.body, p)?;
        Ok(CompleteElement { precision: p, body })
    }

    pub fn pow(&self, k: u32) -> CompleteElement {
        let mut acc = CompleteElement::one(self.context(), self.precision);
        for _ in 0..k {
            acc = acc.mul(self).expect("same context");
        }
        acc
    }

    /// The completed Baxter operator; raises the precision by one.
    pub fn baxter_p(&self) -> CompleteElement {
        CompleteElement { precision: self.precision + 1, body: self.body.baxter_p() }
    }

    pub fn to_json(&self) -> Json {
        json!({ "precision": self.precision, "terms": self.body.to_json() })
    }
}

impl fmt::Display for CompleteElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg {})", self.body, self.precision + 1)
    }
}
