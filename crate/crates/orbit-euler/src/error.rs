use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("closure exceeds cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generated element has no two-sided inverse in the closure")]
    NotInvertible,
    #[error("subgroup is not normal in its parent")]
    NotNormal,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no weighting: the linear system is inconsistent")]
    NoWeighting,
    #[error("matrix admits no Euler characteristic (weighting or coweighting missing)")]
    NoEulerCharacteristic,
    #[error("subgroup is not a p-subgroup")]
    NotPSubgroup,
    #[error("subgroup set is not closed under conjugation")]
    NotClosed,
    #[error("modified mark is not integral (implementation bug)")]
    NonIntegral,
    #[error("polynomial division leaves a remainder")]
    NonExactDivision,
    #[error("{0} does not divide the group order")]
    NotADivisor(u64),
    #[error("group has no matrix realization")]
    NotLieCatalog,
    #[error("prime {p} divides q = {q}")]
    PDividesQ { p: u64, q: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
