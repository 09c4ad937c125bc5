//! Standard constructions and a catalog of named codes.

pub mod catalog;
pub mod constructions;

pub use catalog::{
    catalog_code, catalog_entry, catalog_get, catalog_list, verify_entry, CatalogEntry, Check, Claims, Source,
    VerificationReport,
};
pub use constructions::{d_component, d_plus, direct_sum_all, doubly_even_completion, e7, extended_qr, reed_muller};
