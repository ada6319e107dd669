//! Exact arithmetic toolkit for rational curves on Hermitian surfaces over
//! finite fields: the field tower `F_p ⊂ F_q ⊂ F_{q²} ⊂ F_{q⁴}`, dense matrix
//! algebra with entrywise Frobenius, surface point/line enumeration, the Gram
//! containment criterion for rational curves, the explicit degree-(q+1) curve
//! on the Fermat surface, and orbit/stabilizer computations in the projective
//! unitary groups.

pub mod curve;
pub mod field;
pub mod group;
pub mod mat;
pub mod report;
pub mod surface;

pub use field::{Fe, FieldCtx};
pub use mat::Mat;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("q = {0} exceeds the supported desk-scale range (q <= 9)")]
    FieldTooLarge(u64),
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("element index {0} out of range for this field")]
    BadElement(u32),
    #[error("element does not lie in the requested subfield")]
    NotInSubfield,
    #[error("unsupported subfield selector {0}")]
    BadSubfield(u32),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not hermitian for the requested conjugation")]
    NotHermitian,
    #[error("degree {0} out of range for this operation")]
    BadDegree(usize),
    #[error("matrix has a nonzero interior column; not reducible")]
    NonzeroInteriorColumn,
    #[error("rank {0} below the required minimum")]
    RankTooLow(usize),
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("gram matrix of the result is not of D_B shape")]
    NotDbShape,
    #[error("parametrization is not injective over P¹(F_{{q⁴}})")]
    NonInjective,
    #[error("exhaustive scan is only feasible for q = 2")]
    ScanInfeasible,
    #[error("group generation certificate failed: closure has order {got}, expected {want}")]
    GenerationCertificate { got: u64, want: u64 },
    #[error("stabilizer methods disagree: scan_group {scan} vs via_pgu2 {pgu2}")]
    StabilizerMismatch { scan: u64, pgu2: u64 },
    #[error("orbit-stabilizer consistency failed: {orbit} * {stabilizer} != {group}")]
    OrbitInconsistent { orbit: u64, stabilizer: u64, group: u64 },
    #[error("transformation identity failed on a sampled pair")]
    TransformIdentity,
    #[error("incidence profile mismatch: {0}")]
    IncidenceMismatch(String),
    #[error("command {command} is not feasible for q = {q}")]
    Infeasible { command: String, q: u32 },
    #[error("invalid matrix file: {0}")]
    MatrixFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
