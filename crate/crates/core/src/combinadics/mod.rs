//! Ranking and unranking bijections between combinatorial families and `[0, M)`.
//!
//! Every family carries an explicit total order:
//!
//! * fixed-size combinations: colexicographic, `rank = sum_j C(c_j, j)`;
//! * combinations over a set of sizes: by size, then colex, each size offset by the
//!   number of smaller objects;
//! * permutations: lexicographic (Lehmer code) or Myrvold–Ruskey;
//! * Dyck paths: lexicographic with `East < North`, counted with ballot numbers;
//! * words: base-`A` positional value.
//!
//! Counts and ranks are exact big integers.

mod binomial;
mod codec;
mod combination;
mod dyck;
mod permutation;
mod word;

pub use binomial::{binomial, catalan, factorial, BinomialTable};
pub use codec::{domain_size, DomainCodec, Family, Object, PermutationOrdering};
pub use combination::{
    bits_to_combination, combination_to_bits, rank_bounded_combination, rank_combination,
    rank_combination_with, unrank_bounded_combination, unrank_combination,
    unrank_combination_with, Combination, OrderedCombinations,
};
pub use dyck::{
    dyck_count, num_dyck, rank_dyck, rank_dyck_with, unrank_dyck, unrank_dyck_with,
    BallotTable, DyckPath, Step,
};
pub use permutation::{
    lehmer_code, rank_permutation_lehmer, rank_permutation_mr, unrank_permutation_lehmer,
    unrank_permutation_mr, Permutation,
};
pub use word::{rank_word, unrank_word, word_count, Word};
