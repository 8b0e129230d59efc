use crate::padic::ExtensionElement;

/// Ring operations shared by coefficients, series and group-ring elements.
pub trait Algebra: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Zero of the same shape.
    fn zero_like(&self) -> Self;
    /// One of the same shape.
    fn one_like(&self) -> Self;
    /// Whether the value vanishes at its precision.
    fn is_zero(&self) -> bool;
}

impl Algebra for ExtensionElement {
    fn add(&self, o: &Self) -> Self {
        ExtensionElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ExtensionElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ExtensionElement::mul(self, o)
    }
    fn neg(&self) -> Self {
        ExtensionElement::neg(self)
    }
    fn zero_like(&self) -> Self {
        ExtensionElement::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        ExtensionElement::one(self.ring())
    }
    fn is_zero(&self) -> bool {
        ExtensionElement::is_zero(self)
    }
}
