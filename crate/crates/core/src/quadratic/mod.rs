//! Exact arithmetic in quadratic fields and the classical Pell machinery.

mod num;
mod pell;
mod scalar;

pub use self::num::{is_field_discriminant, quad_arith, square_decomposition, ArithOp, QuadNum};
pub use self::pell::{continued_fraction_sqrt, pell_data, ContinuedFraction, PellData};
pub use self::scalar::Scalar;

pub(crate) use self::pell::check_real_field;

impl serde::Serialize for QuadNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
