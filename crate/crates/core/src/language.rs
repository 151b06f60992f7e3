//! Source languages and their frozen word tables.
//!
//! Keyword tables are the reserved words of Python 3 and Java SE. Builtin
//! tables list names that are reachable without qualification and must never
//! be renamed or produced as a replacement.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceLanguage {
    Java,
    Python,
}

impl SourceLanguage {
    pub const ALL: [SourceLanguage; 2] = [SourceLanguage::Java, SourceLanguage::Python];

    pub fn as_str(self) -> &'static str {
        match self {
            SourceLanguage::Java => "java",
            SourceLanguage::Python => "python",
        }
    }

    pub fn keywords(self) -> &'static [&'static str] {
        match self {
            SourceLanguage::Java => JAVA_KEYWORDS,
            SourceLanguage::Python => PYTHON_KEYWORDS,
        }
    }

    pub fn is_keyword(self, word: &str) -> bool {
        self.keywords().contains(&word)
    }

    /// Names that are always visible in this language without an import.
    pub fn builtins(self) -> &'static [&'static str] {
        match self {
            SourceLanguage::Java => JAVA_BUILTINS,
            SourceLanguage::Python => PYTHON_BUILTINS,
        }
    }

    /// Builtins plus well-known standard-library module names.
    pub fn is_standard_name(self, word: &str) -> bool {
        match self {
            SourceLanguage::Java => JAVA_BUILTINS.contains(&word),
            SourceLanguage::Python => {
                PYTHON_BUILTINS.contains(&word)
                    || PYTHON_RECEIVERS.contains(&word)
                    || PYTHON_STDLIB_MODULES.contains(&word)
            }
        }
    }

    /// Guess the language from a file extension (`py`, `java`).
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext {
            "py" | "pyw" => Some(SourceLanguage::Python),
            "java" => Some(SourceLanguage::Java),
            _ => None,
        }
    }
}

impl fmt::Display for SourceLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unsupported language `{0}` (expected `java` or `python`)")]
pub struct UnsupportedLanguage(pub String);

impl FromStr for SourceLanguage {
    type Err = UnsupportedLanguage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "java" => Ok(SourceLanguage::Java),
            "python" | "py" => Ok(SourceLanguage::Python),
            _ => Err(UnsupportedLanguage(s.to_string())),
        }
    }
}

/// Python 3 reserved words (35 of them). Soft keywords such as `match` stay identifiers.
pub const PYTHON_KEYWORDS: &[&str] = &[
    "False", "None", "True", "and", "as", "assert", "async", "await", "break", "class",
    "continue", "def", "del", "elif", "else", "except", "finally", "for", "from", "global",
    "if", "import", "in", "is", "lambda", "nonlocal", "not", "or", "pass", "raise", "return",
    "try", "while", "with", "yield",
];

/// Java SE reserved keywords plus the reserved literals `true`, `false`, `null`.
/// Contextual words (`var`, `record`, `yield`, `sealed`, ...) are identifiers.
pub const JAVA_KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally",
    "float", "for", "goto", "if", "implements", "import", "instanceof", "int", "interface",
    "long", "native", "new", "package", "private", "protected", "public", "return", "short",
    "static", "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "void", "volatile", "while", "_", "true", "false", "null",
];

/// Java primitive type keywords (and `void`), which can head a method header.
pub const JAVA_PRIMITIVE_TYPES: &[&str] = &[
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

pub const JAVA_MODIFIERS: &[&str] = &[
    "public", "protected", "private", "static", "final", "abstract", "synchronized", "native",
    "strictfp", "transient", "volatile", "default",
];

/// Python `builtins` module contents.
pub const PYTHON_BUILTINS: &[&str] = &[
    // functions
    "abs", "aiter", "all", "anext", "any", "ascii", "bin", "breakpoint", "callable", "chr",
    "compile", "delattr", "dir", "divmod", "enumerate", "eval", "exec", "filter", "format",
    "getattr", "globals", "hasattr", "hash", "help", "hex", "id", "input", "isinstance",
    "issubclass", "iter", "len", "locals", "map", "max", "min", "next", "oct", "open", "ord",
    "pow", "print", "repr", "reversed", "round", "setattr", "sorted", "sum", "vars", "zip",
    "__import__", "__build_class__",
    // types
    "bool", "bytearray", "bytes", "classmethod", "complex", "dict", "float", "frozenset", "int",
    "list", "memoryview", "object", "property", "range", "set", "slice", "staticmethod", "str",
    "super", "tuple", "type",
    // constants
    "Ellipsis", "NotImplemented", "__debug__", "copyright", "credits", "exit", "license",
    "quit", "__name__", "__file__", "__doc__", "__spec__", "__loader__", "__package__",
    // exceptions
    "ArithmeticError", "AssertionError", "AttributeError", "BaseException",
    "BaseExceptionGroup", "BlockingIOError", "BrokenPipeError", "BufferError", "BytesWarning",
    "ChildProcessError", "ConnectionAbortedError", "ConnectionError",
    "ConnectionRefusedError", "ConnectionResetError", "DeprecationWarning", "EOFError",
    "EncodingWarning", "EnvironmentError", "Exception", "ExceptionGroup", "FileExistsError",
    "FileNotFoundError", "FloatingPointError", "FutureWarning", "GeneratorExit", "IOError",
    "ImportError", "ImportWarning", "IndentationError", "IndexError", "InterruptedError",
    "IsADirectoryError", "KeyError", "KeyboardInterrupt", "LookupError", "MemoryError",
    "ModuleNotFoundError", "NameError", "NotADirectoryError", "NotImplementedError",
    "OSError", "OverflowError", "PendingDeprecationWarning", "PermissionError",
    "ProcessLookupError", "RecursionError", "ReferenceError", "ResourceWarning",
    "RuntimeError", "RuntimeWarning", "StopAsyncIteration", "StopIteration", "SyntaxError",
    "SyntaxWarning", "SystemError", "SystemExit", "TabError", "TimeoutError", "TypeError",
    "UnboundLocalError", "UnicodeDecodeError", "UnicodeEncodeError", "UnicodeError",
    "UnicodeTranslateError", "UnicodeWarning", "UserWarning", "ValueError", "Warning",
    "ZeroDivisionError",
    // Python 2 names still common in corpora
    "basestring", "unicode", "long", "xrange", "raw_input", "unichr", "reduce", "file",
    "cmp", "execfile", "StandardError",
];

/// Conventional method receivers; preserved even where they are bound as parameters.
pub const PYTHON_RECEIVERS: &[&str] = &["self", "cls"];

/// Standard-library modules that snippets reference without a visible import.
pub const PYTHON_STDLIB_MODULES: &[&str] = &[
    "abc", "argparse", "array", "ast", "asyncio", "base64", "binascii", "bisect", "builtins",
    "calendar", "codecs", "collections", "concurrent", "contextlib", "copy", "csv", "ctypes",
    "datetime", "decimal", "difflib", "enum", "errno", "fnmatch", "fractions", "functools",
    "gc", "getpass", "glob", "gzip", "hashlib", "heapq", "hmac", "html", "http", "importlib",
    "inspect", "io", "itertools", "json", "logging", "math", "mimetypes", "multiprocessing",
    "numbers", "operator", "os", "pathlib", "pickle", "platform", "pprint", "queue", "random",
    "re", "select", "shlex", "shutil", "signal", "socket", "sqlite3", "ssl", "stat",
    "statistics", "string", "struct", "subprocess", "sys", "tempfile", "textwrap",
    "threading", "time", "timeit", "traceback", "types", "typing", "unicodedata", "unittest",
    "urllib", "uuid", "warnings", "weakref", "xml", "zipfile", "zlib",
];

/// `java.lang` names visible in every compilation unit.
pub const JAVA_BUILTINS: &[&str] = &[
    "Boolean", "Byte", "Character", "CharSequence", "Class", "ClassCastException",
    "Comparable", "Deprecated", "Double", "Enum", "Error", "Exception", "Float",
    "FunctionalInterface", "IllegalArgumentException", "IllegalStateException",
    "IndexOutOfBoundsException", "Integer", "InterruptedException", "Iterable", "Long", "Math",
    "NullPointerException", "Number", "NumberFormatException", "Object", "Override", "Process",
    "Runnable", "Runtime", "RuntimeException", "SafeVarargs", "Short", "StrictMath", "String",
    "StringBuffer", "StringBuilder", "SuppressWarnings", "System", "Thread", "Throwable",
    "UnsupportedOperationException", "Void",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn python_has_35_keywords() {
        assert_eq!(PYTHON_KEYWORDS.len(), 35);
    }

    #[test]
    fn tables_have_no_duplicates() {
        for table in [PYTHON_KEYWORDS, JAVA_KEYWORDS, PYTHON_BUILTINS, JAVA_BUILTINS] {
            let mut sorted = table.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), table.len());
        }
    }

    #[test]
    fn parse_language_tags() {
        assert_eq!("Java".parse::<SourceLanguage>().unwrap(), SourceLanguage::Java);
        assert_eq!("python".parse::<SourceLanguage>().unwrap(), SourceLanguage::Python);
        assert!("cpp".parse::<SourceLanguage>().is_err());
    }
}
