pub mod anonymize;
pub mod corpus;
pub mod eval;
pub mod language;
pub mod lexer;
pub mod names;
pub mod seed;

pub use anonymize::{
    anonymize, anonymize_snippet, apply_renames, build_rename_map, extract_pool, AnonymizeConfig,
    AnonymizeError, CategorySet, NamePool, NamingScheme, PoolBuilder, PoolSizes, RenameMap, Strategy,
};
pub use language::SourceLanguage;
pub use lexer::{detokenize, tokenize, LexError, Token, TokenKind, TokenStream};
pub use names::{classify_names, NameCategory, NameInventory, NameOccurrence};
