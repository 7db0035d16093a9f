//! Degreewise checks of generation for invariant rings: exact rank
//! computations in type A, row splittings in type B, and the duality of
//! dimensions between `G_{r,n}` and `G_{n-r,n}`.

mod certificate;
mod generation;
mod report;
mod typeb;

pub use certificate::{CertMethod, CertTerm, FactorCertificate};
pub use generation::{
    basis_a, check_duality, check_generation, check_generation_with, duality_dims, linear_certificate,
    GenerationOptions, DEFAULT_BUDGET,
};
pub use report::{format_csv, format_table, reports_json, run_entry, run_paper_suite, run_suite_with, GenerationReport, Verdict};
pub use typeb::{basis_b, check_type_b_factorization, check_type_b_factorization_with, find_split, RowSplit};
