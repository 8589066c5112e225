use std::path::PathBuf;

use softrough::io::{CensusConfigDoc, RunSpecDoc};

pub fn fixture_path(relative: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(relative)
}

pub fn fixture_text(relative: &str) -> String {
    let path = fixture_path(relative);
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read fixture {}: {e}", path.display()))
}

pub fn load_spec(relative: &str) -> RunSpecDoc {
    RunSpecDoc::parse(&fixture_text(relative)).expect("fixture specs parse")
}

#[allow(dead_code)]
pub fn load_census(relative: &str) -> CensusConfigDoc {
    CensusConfigDoc::parse(&fixture_text(relative)).expect("fixture census configs parse")
}
