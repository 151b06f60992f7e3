mod common;

use litmask_core::{
    anonymize, detokenize, tokenize, AnonymizeConfig, CategorySet, NameCategory, NamingScheme, SourceLanguage,
    Strategy as RenameStrategy, TokenKind,
};
use proptest::prelude::*;

fn language() -> impl Strategy<Value = SourceLanguage> {
    prop_oneof![Just(SourceLanguage::Java), Just(SourceLanguage::Python)]
}

fn code_like() -> impl Strategy<Value = String> {
    proptest::collection::vec(
        prop_oneof![
            "[a-zA-Z_][a-zA-Z0-9_]{0,6}",
            "[0-9]{1,4}(\\.[0-9]+)?",
            Just(" ".to_string()),
            Just("\n".to_string()),
            Just("\t".to_string()),
            "[-+*/%=<>!&|^~.,;:()\\[\\]{}@]",
            "\"[a-z ]{0,5}\"",
            "'[a-z]{0,3}'",
            Just("# note\n".to_string()),
            Just("// note\n".to_string()),
            Just("/* c */".to_string()),
        ],
        0..40,
    )
    .prop_map(|parts| parts.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn any_accepted_input_round_trips(src in any::<String>(), lang in language()) {
        if let Ok(stream) = tokenize(&src, lang) {
            prop_assert_eq!(detokenize(&stream), src);
        }
    }

    #[test]
    fn code_like_input_round_trips(src in code_like(), lang in language()) {
        if let Ok(stream) = tokenize(&src, lang) {
            prop_assert_eq!(detokenize(&stream), src.clone());
            let again = tokenize(&detokenize(&stream), lang).unwrap();
            prop_assert_eq!(again.kinds(), stream.kinds());
            for tok in &stream.tokens {
                prop_assert!(!tok.text.is_empty());
                if tok.kind == TokenKind::Layout {
                    prop_assert!(tok.text.chars().all(char::is_whitespace));
                }
            }
        }
    }

    #[test]
    fn anonymization_keeps_shape(seed in 0u64..5000, config_seed: u64, lang in language(), cat in 0usize..4) {
        let src = common::snippet(lang, seed);
        let categories = match cat {
            0 => CategorySet::only(NameCategory::Variable),
            1 => CategorySet::only(NameCategory::Definition),
            2 => CategorySet::only(NameCategory::Invocation),
            _ => CategorySet::all(),
        };
        let config = AnonymizeConfig::new(categories, RenameStrategy::RandomGenerated, NamingScheme::default(), config_seed);
        let out = anonymize(&src, lang, &config, None).unwrap();
        let before = tokenize(&src, lang).unwrap();
        prop_assert_eq!(out.stream.kinds(), before.kinds());
        let text = detokenize(&out.stream);
        prop_assert_eq!(tokenize(&text, lang).unwrap().kinds(), before.kinds());
        let again = anonymize(&src, lang, &config, None).unwrap();
        prop_assert_eq!(detokenize(&again.stream), text);
    }
}
