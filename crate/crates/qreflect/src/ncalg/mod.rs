//! Noncommutative operator algebra: words, operator-valued matrices,
//! exchange-rule derivation, and normal-order rewriting.
//!
//! The submodules layer as follows: [`word`] defines symbols, words, and
//! exact operator polynomials; [`matrix`] packages polynomials into
//! auxiliary-space matrices; [`rules`] derives exchange rules from quadratic
//! defining relations; [`rewrite`] drives rewriting to normal order and
//! checks confluence of the rule system.

pub mod matrix;
pub mod rewrite;
pub mod rules;
pub mod word;

pub use matrix::{ncmat_embed, ncmat_partial_transpose, NCMat};
pub use rewrite::{
    check_confluence, check_confluence_with, contract_fixpoint, corrupted_fz_rulebook,
    default_max_steps, is_normal, normal_order, Strategy,
};
pub use rules::{
    derive_exchange_rule, fz_generator, fz_generator_with, fz_rulebook, sandwich_generator, ArgFn,
    DecoratedFactor, ExchangeRule, PairRelation, RelationGen, RuleBook, RuleKey, SandwichRelation,
};
pub use word::{Family, GenSymbol, NCPoly, Word};
