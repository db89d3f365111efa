//! Catalog of known diagrams, recognition against it, and the slope scan.

mod catalog;
mod scan;

pub use catalog::{
    instantiate, lookup, raw_catalog, recognize, s3xs3_entries, CatalogEntry, Expected, RawCatalog, RawEntry,
    Recognition, WeylRule,
};
pub use scan::{candidates, scan, HType, Rejection, ScanReport, Survivor};
