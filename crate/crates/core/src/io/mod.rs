//! Files, word syntax and built-in examples.

pub mod builtin;
pub mod certs;
pub mod format;
pub mod syntax;

pub use builtin::{builtin, BUILTINS};
pub use certs::{bundle_from_json, bundle_to_json};
pub use format::{to_canonical_json, PresentationFile};
pub use syntax::{format_letters, format_word, parse_letters, parse_word};
