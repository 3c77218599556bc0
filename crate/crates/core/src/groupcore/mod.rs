//! Finitely presented groups, free-group words, and matrices over the group
//! algebra L[F] of the free group, with evaluation under linear representations.

mod algebra;
mod evaluate;
mod presentation;
mod word;

pub use algebra::{GroupAlgebraElement, GroupAlgebraMatrix};
pub use evaluate::{evaluate_element, evaluate_matrix, evaluate_word, GeneratorImages};
pub use presentation::{parse_word, GroupPresentation};
pub use word::{free_reduce, Letter, Word};
