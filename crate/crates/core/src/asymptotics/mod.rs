//! Formal expansions `1 + sum r_i(log n) / n^{alpha_i} + o(n^-beta)` and the
//! decision procedures built on them.

mod classify;
mod expansion;
mod numeric;
mod shift;

pub use classify::{
    classify_laguerre2, classify_logmono, laguerre2_asymptotic, laguerre2_t_leading, phi_leading_term,
    pochhammer, Branch, ClassifierVerdict, Decision, LeadingTerm,
};
pub use expansion::{Expansion, ExpansionTerm, LogRat};
pub use numeric::{
    eval_lograt, laguerre2_quotient, leading_value, numeric_eval, pow_rational, shift_quantity_value,
    to_decimal,
};
pub use shift::{shift_expand, shift_quantity_leading, Direction, ShiftQuantity};
