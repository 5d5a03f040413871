use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::binomial::{binomial, factorial};
use super::combination::{Combination, OrderedCombinations};
use super::dyck::{dyck_count, rank_dyck_with, unrank_dyck_with, BallotTable, DyckPath};
use super::permutation::{
    rank_permutation_lehmer, rank_permutation_mr, unrank_permutation_lehmer,
    unrank_permutation_mr, Permutation,
};
use super::word::{rank_word, unrank_word, word_count, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PermutationOrdering {
    /// Lexicographic order via the Lehmer code.
    #[default]
    Lehmer,
    /// Myrvold–Ruskey linear-time order.
    #[serde(alias = "mr")]
    MyrvoldRuskey,
}

/// A combinatorial family together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `k`-subsets of `[0, n)` in colex order.
    #[serde(alias = "comb")]
    Combinations { n: usize, k: usize },
    /// Subsets of `[0, n)` with `min_order <= |c| <= max_order`, ordered by size then colex.
    #[serde(alias = "bounded")]
    BoundedCombinations {
        n: usize,
        #[serde(default)]
        min_order: usize,
        max_order: usize,
    },
    /// Subsets of `[0, n)` whose size is one of `orders`, ordered by size then colex.
    OrderedCombinations { n: usize, orders: Vec<usize> },
    #[serde(alias = "perm")]
    Permutations {
        n: usize,
        #[serde(default)]
        ordering: PermutationOrdering,
    },
    Dyck { n: usize },
    Words { alphabet: usize, length: usize },
}

impl Family {
    fn combination_orders(&self) -> Option<(usize, Vec<usize>)> {
        match self {
            Family::Combinations { n, k } => Some((*n, vec![*k])),
            Family::BoundedCombinations {
                n,
                min_order,
                max_order,
            } => Some((*n, (*min_order..=*max_order).collect())),
            Family::OrderedCombinations { n, orders } => Some((*n, orders.clone())),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Family::Combinations { n, k } if k > n => {
                Err(Error::param(format!("k = {k} exceeds n = {n}")))
            }
            Family::BoundedCombinations {
                n,
                min_order,
                max_order,
            } => {
                if min_order > max_order {
                    Err(Error::param(format!(
                        "empty order range [{min_order}, {max_order}]"
                    )))
                } else if max_order > n {
                    Err(Error::param(format!("K = {max_order} exceeds n = {n}")))
                } else {
                    Ok(())
                }
            }
            Family::OrderedCombinations { n, orders } => {
                if orders.is_empty() {
                    Err(Error::param("at least one combination order is required"))
                } else if let Some(k) = orders.iter().find(|&&k| k > *n) {
                    Err(Error::param(format!("order {k} exceeds n = {n}")))
                } else {
                    Ok(())
                }
            }
            Family::Words { alphabet: 0, .. } => {
                Err(Error::param("alphabet must contain at least one letter"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Combinations { n, k } => write!(f, "{k}-combinations of [{n}]"),
            Family::BoundedCombinations {
                n,
                min_order,
                max_order,
            } => write!(f, "combinations of [{n}] with {min_order}..={max_order} elements"),
            Family::OrderedCombinations { n, orders } => {
                write!(f, "combinations of [{n}] with orders {orders:?}")
            }
            Family::Permutations { n, ordering } => {
                write!(f, "permutations of [{n}] ({ordering:?} order)")
            }
            Family::Dyck { n } => write!(f, "Dyck paths of order {n}"),
            Family::Words { alphabet, length } => {
                write!(f, "length-{length} words over {alphabet} letters")
            }
        }
    }
}

/// Exact number of objects in the family.
pub fn domain_size(family: &Family) -> Result<BigUint> {
    family.validate()?;
    Ok(match family {
        Family::Permutations { n, .. } => factorial(*n),
        Family::Dyck { n } => dyck_count(*n),
        Family::Words { alphabet, length } => word_count(*alphabet, *length)?,
        other => {
            let (n, mut orders) = other.combination_orders().expect("combination family");
            orders.sort_unstable();
            orders.dedup();
            orders
                .iter()
                .fold(BigUint::zero(), |acc, &k| acc + binomial(n, k))
        }
    })
}

/// One member of a combinatorial family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Object {
    Combination(Combination),
    Permutation(Permutation),
    Dyck(DyckPath),
    Word(Word),
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Combination(c) => c.fmt(f),
            Object::Permutation(p) => p.fmt(f),
            Object::Dyck(d) => d.fmt(f),
            Object::Word(w) => w.fmt(f),
        }
    }
}

impl Object {
    pub fn as_combination(&self) -> Option<&Combination> {
        match self {
            Object::Combination(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_permutation(&self) -> Option<&Permutation> {
        match self {
            Object::Permutation(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_dyck(&self) -> Option<&DyckPath> {
        match self {
            Object::Dyck(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            Object::Word(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
enum Engine {
    Combinations(OrderedCombinations),
    Permutations(PermutationOrdering),
    Dyck(BallotTable),
    Words,
}

/// Rank/unrank bijection between a family and `[0, M)`.
///
/// Immutable after construction; the binomial and ballot tables it caches are shared by
/// every rank/unrank call.
#[derive(Debug, Clone)]
pub struct DomainCodec {
    family: Family,
    size: BigUint,
    engine: Engine,
}

fn bits_for(values: usize) -> usize {
    if values <= 1 {
        0
    } else {
        (usize::BITS - (values - 1).leading_zeros()) as usize
    }
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    let inner = text
        .trim()
        .trim_start_matches(['{', '[', '('])
        .trim_end_matches(['}', ']', ')']);
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::invalid(format!("'{s}' is not a non-negative integer")))
        })
        .collect()
}

impl DomainCodec {
    pub fn new(family: Family) -> Result<Self> {
        family.validate()?;
        let engine = match &family {
            Family::Permutations { ordering, .. } => Engine::Permutations(*ordering),
            Family::Dyck { n } => Engine::Dyck(BallotTable::new(*n)),
            Family::Words { .. } => Engine::Words,
            other => {
                let (n, orders) = other.combination_orders().expect("combination family");
                Engine::Combinations(OrderedCombinations::new(n, orders)?)
            }
        };
        let size = domain_size(&family)?;
        Ok(DomainCodec {
            family,
            size,
            engine,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    /// `M` as a machine integer, if it fits.
    pub fn size_usize(&self) -> Option<usize> {
        self.size.to_usize()
    }

    /// `M` as a machine integer, or a capacity error when it exceeds `limit`.
    pub fn materialisable_size(&self, limit: usize) -> Result<usize> {
        match self.size_usize() {
            Some(m) if m <= limit => Ok(m),
            _ => Err(Error::Capacity {
                requested: self.size.to_string(),
                limit: limit.to_string(),
            }),
        }
    }

    pub fn rank(&self, object: &Object) -> Result<BigUint> {
        match (&self.engine, object) {
            (Engine::Combinations(codec), Object::Combination(c)) => codec.rank(c),
            (Engine::Permutations(ordering), Object::Permutation(p)) => {
                let Family::Permutations { n, .. } = self.family else {
                    unreachable!()
                };
                if p.len() != n {
                    return Err(Error::invalid(format!(
                        "permutation of length {} passed to codec over [{n}]",
                        p.len()
                    )));
                }
                Ok(match ordering {
                    PermutationOrdering::Lehmer => rank_permutation_lehmer(p),
                    PermutationOrdering::MyrvoldRuskey => rank_permutation_mr(p),
                })
            }
            (Engine::Dyck(table), Object::Dyck(d)) => rank_dyck_with(table, d),
            (Engine::Words, Object::Word(w)) => {
                let Family::Words { alphabet, length } = self.family else {
                    unreachable!()
                };
                if w.alphabet() != alphabet || w.len() != length {
                    return Err(Error::invalid(format!(
                        "word {w} does not belong to {}",
                        self.family
                    )));
                }
                Ok(rank_word(w))
            }
            _ => Err(Error::invalid(format!(
                "object {object} does not belong to {}",
                self.family
            ))),
        }
    }

    pub fn unrank(&self, rank: &BigUint) -> Result<Object> {
        if rank >= &self.size {
            return Err(Error::Range {
                index: rank.to_string(),
                size: self.size.to_string(),
            });
        }
        Ok(match (&self.engine, &self.family) {
            (Engine::Combinations(codec), _) => Object::Combination(codec.unrank(rank)?),
            (Engine::Permutations(ordering), Family::Permutations { n, .. }) => {
                Object::Permutation(match ordering {
                    PermutationOrdering::Lehmer => unrank_permutation_lehmer(rank, *n)?,
                    PermutationOrdering::MyrvoldRuskey => unrank_permutation_mr(rank, *n)?,
                })
            }
            (Engine::Dyck(table), _) => Object::Dyck(unrank_dyck_with(table, rank)?),
            (Engine::Words, Family::Words { alphabet, length }) => {
                Object::Word(unrank_word(rank, *alphabet, *length)?)
            }
            _ => unreachable!("engine built from family"),
        })
    }

    pub fn rank_index(&self, object: &Object) -> Result<usize> {
        let r = self.rank(object)?;
        r.to_usize().ok_or_else(|| Error::Capacity {
            requested: r.to_string(),
            limit: usize::MAX.to_string(),
        })
    }

    pub fn unrank_index(&self, index: usize) -> Result<Object> {
        self.unrank(&BigUint::from(index))
    }

    /// Parses the textual form used by `Display`; brackets are optional for list objects.
    pub fn parse_object(&self, text: &str) -> Result<Object> {
        let object = match &self.family {
            Family::Permutations { .. } => Object::Permutation(Permutation::new(parse_list(text)?)?),
            Family::Dyck { .. } => Object::Dyck(text.parse()?),
            Family::Words { alphabet, .. } => Object::Word(Word::new(*alphabet, parse_list(text)?)?),
            other => {
                let (n, _) = other.combination_orders().expect("combination family");
                Object::Combination(Combination::from_unsorted(n, parse_list(text)?)?)
            }
        };
        // membership (sizes, lengths) is checked by rank
        self.rank(&object)?;
        Ok(object)
    }

    /// Width of the natural bitstring encoding of an object:
    /// combinations use one indicator bit per element, permutations and words use
    /// `ceil(log2)` bits per entry, Dyck paths one bit per step.
    pub fn bit_width(&self) -> usize {
        match &self.family {
            Family::Permutations { n, .. } => n * bits_for(*n),
            Family::Dyck { n } => 2 * n,
            Family::Words { alphabet, length } => length * bits_for(*alphabet),
            other => other.combination_orders().expect("combination family").0,
        }
    }

    /// Bitstring encoding of `object` as an integer of [`Self::bit_width`] bits.
    ///
    /// Combinations put `x_j` at bit `j`; sequences put their first entry in the most
    /// significant block, so words over a binary alphabet encode to their own rank.
    pub fn encode_bits(&self, object: &Object) -> Result<u64> {
        let width = self.bit_width();
        if width > 63 {
            return Err(Error::Capacity {
                requested: format!("{width} bits"),
                limit: "63 bits".into(),
            });
        }
        self.rank(object)?;
        let pack = |values: &[usize], block: usize| {
            values
                .iter()
                .fold(0u64, |acc, &v| (acc << block) | v as u64)
        };
        Ok(match object {
            Object::Combination(c) => c.to_mask(),
            Object::Permutation(p) => pack(p.as_slice(), bits_for(p.len())),
            Object::Dyck(d) => d.to_mask(),
            Object::Word(w) => pack(w.letters(), bits_for(w.alphabet())),
        })
    }
}
