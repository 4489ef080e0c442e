//! Monomials, binomials, term orders and the binomial Buchberger engine.

mod binomial;
mod groebner;
mod monomial;
mod order;

pub use binomial::{Binomial, BinomialDisplay, MarkedBasis};
pub(crate) use groebner::normal_form_monomial;
pub use groebner::{
    buchberger, certify_marked, initial_ideal, is_groebner_marked, is_squarefree, reduce, spair,
    Certificate,
};
pub use monomial::{Monomial, MonomialDisplay};
pub use order::{OrderKind, TermOrder, Tie};
