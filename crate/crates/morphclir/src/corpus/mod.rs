//! Document ingestion, tokenization, the inverted index, co-occurrence
//! windows and the part-of-speech lexicon.

mod cooccurrence;
mod document;
mod index;
mod lexicon;
mod snapshot;
mod tokenize;

pub use cooccurrence::{CooccurrenceTable, DEFAULT_WINDOW};
pub use document::{parse_tab_lines, parse_trec, read_documents, Document};
pub use index::{CollectionIndex, DocNum, IndexBuilder, Posting, TermNum};
pub use lexicon::{PosLexicon, UNKNOWN_TAG};
pub use snapshot::{read_snapshot, write_snapshot, IndexSnapshot, SnapshotManifest, SNAPSHOT_FORMAT_VERSION};
pub use tokenize::{tokenize, StopwordList};

/// Description of the tokenizer recorded in snapshot manifests.
pub const TOKENIZER_DESCRIPTION: &str = "unicode-letters,lowercase";
