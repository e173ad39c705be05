//! Fuzzy spatial templates and their recognition in 2-D situations.
//!
//! A [`template::Template`] names typed objects and a DAG of fuzzy geometric
//! relations over them. [`recognition::recognize`] finds every assignment of
//! situation objects whose weakest relation reaches a threshold, and
//! [`oracle::brute_force_recognize`] grades every injective mapping for
//! cross-checking.
//!
//! ```
//! use spatial_templates::io::{load_situation, load_template};
//! use spatial_templates::recognition::{recognize, MatchOptions};
//!
//! let data = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
//! let ct = load_template(data.join("division_template.json"))?.compile()?;
//! let s = load_situation(data.join("division_situation.json"))?;
//! let rec = recognize(&ct, &s, 0.3, &MatchOptions::default())?;
//! assert_eq!(rec.instances.len(), 2);
//! assert_eq!(rec.instances[0].situation_object("O1"), Some("u02"));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod bench;
pub mod corpus;
pub mod fgr;
pub mod fuzzy;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod oracle;
pub mod recognition;
pub mod render;
pub mod spatial_index;
pub mod template;
