//! Free-group words, their evaluation in `U_n`, and the word families.

mod eval;
pub mod families;
mod sexpr;
mod word;

pub use eval::{evaluate, Assignment, Evaluator};
pub use families::{build_two_gen_word, build_w, left_normed};
pub use word::{Kind, Word};
