//! The fixture corpus, embedded at build time from the workspace
//! `fixtures/` directory.
//!
//! Each file opens with `#` comment lines describing the listing, one of
//! which is `# expect: <list>` naming the properties the listing must have.

use crate::expect::{parse_expectations, Expectation};

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub text: &'static str,
}

macro_rules! fixture {
    ($name:literal, $file:literal) => {
        Fixture { name: $name, file: $file, text: include_str!(concat!("../../../fixtures/", $file)) }
    };
}

pub const ALL: &[Fixture] = &[
    fixture!("a5", "a5.scp"),
    fixture!("avsp-base-s4", "avsp-base-s4.scp"),
    fixture!("avsp-base-t6", "avsp-base-t6.scp"),
    fixture!("avsp-nontight-4", "avsp-nontight-4.avsp"),
    fixture!("avsp-tight-3", "avsp-tight-3.avsp"),
    fixture!("b5", "b5.scp"),
    fixture!("c5", "c5.scp"),
    fixture!("compress-source-4", "compress-source-4.scp"),
    fixture!("cubic-5", "cubic-5.scp"),
    fixture!("d5", "d5.scp"),
    fixture!("homogeneous-6-4", "homogeneous-6-4.scp"),
    fixture!("lagarias-shor-5", "lagarias-shor-5.scp"),
    fixture!("maximal-3", "maximal-3.scp"),
    fixture!("maximal-4", "maximal-4.scp"),
    fixture!("maximal-6", "maximal-6.scp"),
    fixture!("min-dim-base-6", "min-dim-base-6.scp"),
    fixture!("reducible-example", "reducible-example.scp"),
    fixture!("s3", "s3.scp"),
    fixture!("s4", "s4.scp"),
    fixture!("s5", "s5.scp"),
    fixture!("spm-4", "spm-4.scp"),
    fixture!("ternary-4", "ternary-4.scp"),
];

pub fn get(name: &str) -> Option<&'static Fixture> {
    ALL.iter().find(|f| f.name == name || f.file == name)
}

impl Fixture {
    pub fn is_avsp(&self) -> bool {
        self.file.ends_with(".avsp")
    }

    /// The comment lines other than the expectation line, `#` stripped.
    pub fn description(&self) -> String {
        self.text
            .lines()
            .filter_map(|l| l.strip_prefix('#'))
            .map(str::trim)
            .filter(|l| !l.starts_with("expect:"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn expectations(&self) -> Vec<Expectation> {
        let line = self
            .text
            .lines()
            .filter_map(|l| l.strip_prefix('#'))
            .find_map(|l| l.trim().strip_prefix("expect:"))
            .unwrap_or("");
        parse_expectations(line.trim()).expect("fixture expectations are well formed")
    }
}
