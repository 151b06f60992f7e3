//! Bubble-sort analogs in Python and Java anonymized with the sequential
//! scheme over all three categories.

mod common;

use common::listing::*;
use litmask_core::{
    anonymize, AnonymizeConfig, CategorySet, NameCategory, NamingScheme, SourceLanguage, Strategy,
};

fn sequential_all() -> AnonymizeConfig {
    AnonymizeConfig::new(CategorySet::all(), Strategy::RandomGenerated, NamingScheme::Sequential, 0)
}

fn check(source: &str, expected: &str, language: SourceLanguage) {
    let out = anonymize(source, language, &sequential_all(), None).unwrap();
    let mut got: Vec<(&str, &str)> = out.map.iter().map(|(_, n, r)| (n, r)).collect();
    let mut want = EXPECTED_MAP.to_vec();
    got.sort();
    want.sort();
    assert_eq!(got, want, "{language} rename map");
    assert_eq!(out.source(), expected, "{language} output text");
    assert_eq!(out.map.get(NameCategory::Definition, "bubble_sort"), Some("fun1"));
    assert_eq!(out.map.get(NameCategory::Invocation, "pred"), Some("fun2"));
}

#[test]
fn python_analog_reproduces_mapping() {
    check(PYTHON_BUBBLE_SORT, PYTHON_EXPECTED, SourceLanguage::Python);
}

#[test]
fn java_analog_reproduces_mapping() {
    check(JAVA_BUBBLE_SORT, JAVA_EXPECTED, SourceLanguage::Java);
}

#[test]
fn qualified_calls_unchanged() {
    let out = anonymize(JAVA_BUBBLE_SORT, SourceLanguage::Java, &sequential_all(), None).unwrap();
    for call in ["Cursors.distance(", "Cursors.advance(", "Cursors.swap(", ".equals(", ".get()"] {
        assert_eq!(
            JAVA_BUBBLE_SORT.matches(call).count(),
            out.source().matches(call).count(),
            "{call}"
        );
    }
}
