//! File formats (`matpoly.v1`, `spectraldata.v1`, `certificate.v1`,
//! `opscript.v1`) and stacking diagrams.

mod diagram;
mod json;

pub use diagram::{render_ascii, render_svg};
pub use json::{
    certificate_from_json, certificate_to_json, document_from_json, matpoly_from_json, matpoly_to_json,
    op_to_json, opscript_from_json, opscript_to_json, parse_document, parse_field, poly_from_json, poly_to_json,
    print_document, spectral_from_json, spectral_to_json, CertificateDoc, Document, OpScript, CERTIFICATE_V1,
    MATPOLY_V1, OPSCRIPT_V1, SPECTRAL_V1,
};
