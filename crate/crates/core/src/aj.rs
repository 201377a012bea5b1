//! placeholder
pub struct AjVerdict;
pub struct Order1Exclusion;
pub fn aj_verdict() {}
