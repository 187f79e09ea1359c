use thiserror::Error;

use crate::finite::TableViolation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the l-adic integers need a nonempty set of primes")]
    EmptyAdic,
    #[error("cyclic atom Z/{p}^{k} needs k >= 1")]
    CyclicExponent { p: u64, k: u32 },
    #[error("group is not finitely generated: {0}")]
    NotFinitelyGenerated(String),
    #[error("group is not nilpotent: lower central series stabilizes at order {stable_order}")]
    NotNilpotent { stable_order: usize },
    #[error("tower stage {stage} is not witnessed as a nilpotent central extension")]
    UnwitnessedTower { stage: usize },
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(#[from] TableViolation),
    #[error("elements of {0}-power order do not form a subgroup of the expected order")]
    PrimaryPartNotSubgroup(u64),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not Abelian")]
    NotAbelian,
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("catalog parameter out of range: {0}")]
    CatalogParam(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
}
