use crate::error::{Error, Result};

/// Branching vector of a rule: `a` branches that assign one variable and `b`
/// branches that assign two, i.e. `T(k) = a T(k-1) + b T(k-2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RecurrencePair {
    pub a: u32,
    pub b: u32,
}

impl RecurrencePair {
    pub const fn new(a: u32, b: u32) -> Self {
        RecurrencePair { a, b }
    }
}

/// The positive root of `x^2 = a x + b`, the growth rate of the search tree.
pub fn branching_factor(r: RecurrencePair) -> Result<f64> {
    if r.a == 0 && r.b == 0 {
        return Err(Error::InvalidArgument(
            "recurrence needs at least one branch".into(),
        ));
    }
    let (a, b) = (f64::from(r.a), f64::from(r.b));
    Ok((a + (a * a + 4.0 * b).sqrt()) / 2.0)
}
