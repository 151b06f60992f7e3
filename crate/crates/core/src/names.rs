//! Classification of identifier occurrences into literal-feature categories.
//!
//! Every identifier token is assigned one of `Variable`, `Definition`,
//! `Invocation` or `Preserved`. The rules are lexical: snippets are
//! standalone functions, so there is no symbol table to consult. Qualified
//! names (`obj.name`, `Type::name`), builtins and type names are preserved.
//!
//! Each occurrence records its *site* role (what its position says) and its
//! *symbol* category. All unqualified occurrences of one name share a symbol
//! category so a rename stays consistent: a name defined and then called is
//! a `Definition`, a parameter that is called (`pred(a, b)`) is an
//! `Invocation`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::language::{SourceLanguage, JAVA_MODIFIERS, JAVA_PRIMITIVE_TYPES, PYTHON_RECEIVERS};
use crate::lexer::{Token, TokenKind, TokenStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NameCategory {
    Variable,
    Definition,
    Invocation,
    Preserved,
}

impl NameCategory {
    /// The three renameable categories, in canonical order.
    pub const RENAMEABLE: [NameCategory; 3] =
        [NameCategory::Variable, NameCategory::Definition, NameCategory::Invocation];

    pub fn as_str(self) -> &'static str {
        match self {
            NameCategory::Variable => "variable",
            NameCategory::Definition => "definition",
            NameCategory::Invocation => "invocation",
            NameCategory::Preserved => "preserved",
        }
    }

    /// Short CLI spelling: `var`, `def`, `inv`.
    pub fn short(self) -> &'static str {
        match self {
            NameCategory::Variable => "var",
            NameCategory::Definition => "def",
            NameCategory::Invocation => "inv",
            NameCategory::Preserved => "keep",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            NameCategory::Preserved => 0,
            NameCategory::Variable => 1,
            NameCategory::Invocation => 2,
            NameCategory::Definition => 3,
        }
    }
}

impl fmt::Display for NameCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NameCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "var" | "variable" | "variables" => Ok(NameCategory::Variable),
            "def" | "definition" | "definitions" => Ok(NameCategory::Definition),
            "inv" | "invocation" | "invocations" => Ok(NameCategory::Invocation),
            other => Err(format!("unknown name category `{other}` (expected var, def or inv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NameOccurrence {
    pub token_index: usize,
    pub name: String,
    /// Symbol-level category used for renaming.
    pub category: NameCategory,
    /// Role implied by this occurrence's position alone.
    pub site: NameCategory,
    pub qualified: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationStats {
    pub identifiers: usize,
    pub qualified: usize,
    pub preserved: usize,
    /// Receivers of member access that fell through to `Variable` without
    /// evidence of a local binding (possibly a module or class).
    pub ambiguous: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameInventory {
    pub language: SourceLanguage,
    pub occurrences: Vec<NameOccurrence>,
    /// Renameable symbols in order of first occurrence.
    pub symbols: IndexMap<String, NameCategory>,
    pub stats: ClassificationStats,
}

impl NameInventory {
    /// Distinct names of one category, in first-occurrence order.
    pub fn ordered(&self, category: NameCategory) -> Vec<&str> {
        self.symbols
            .iter()
            .filter(|(_, c)| **c == category)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn distinct(&self, category: NameCategory) -> BTreeSet<&str> {
        self.ordered(category).into_iter().collect()
    }

    pub fn count(&self, category: NameCategory) -> usize {
        self.symbols.values().filter(|c| **c == category).count()
    }

    pub fn category_of(&self, name: &str) -> Option<NameCategory> {
        self.symbols.get(name).copied()
    }

    /// Every identifier text in the snippet, renameable or not.
    pub fn identifier_texts(&self) -> BTreeSet<&str> {
        self.occurrences.iter().map(|o| o.name.as_str()).collect()
    }
}

pub fn classify_names(stream: &TokenStream) -> NameInventory {
    let view = View::new(&stream.tokens);
    let sites = match stream.language {
        SourceLanguage::Python => classify_python(&view),
        SourceLanguage::Java => classify_java(&view),
    };

    let mut symbols: IndexMap<String, NameCategory> = IndexMap::new();
    for site in &sites {
        if site.category == NameCategory::Preserved {
            continue;
        }
        let name = &view.tok(site.pos).text;
        let entry = symbols.entry(name.clone()).or_insert(site.category);
        if site.category.precedence() > entry.precedence() {
            *entry = site.category;
        }
    }

    let mut stats = ClassificationStats::default();
    let occurrences = sites
        .into_iter()
        .map(|site| {
            let token_index = view.sig[site.pos];
            let name = stream.tokens[token_index].text.clone();
            stats.identifiers += 1;
            stats.qualified += usize::from(site.qualified);
            stats.ambiguous += usize::from(site.ambiguous);
            let category = if site.category == NameCategory::Preserved {
                stats.preserved += 1;
                NameCategory::Preserved
            } else {
                symbols[&name]
            };
            NameOccurrence { token_index, name, category, site: site.category, qualified: site.qualified }
        })
        .collect();

    NameInventory { language: stream.language, occurrences, symbols, stats }
}

struct Site {
    /// Position in the significant-token view.
    pos: usize,
    category: NameCategory,
    qualified: bool,
    ambiguous: bool,
}

impl Site {
    fn new(pos: usize, category: NameCategory) -> Self {
        Site { pos, category, qualified: false, ambiguous: false }
    }
}

/// Significant tokens only; layout and comments are skipped for adjacency.
struct View<'a> {
    tokens: &'a [Token],
    sig: Vec<usize>,
}

impl<'a> View<'a> {
    fn new(tokens: &'a [Token]) -> Self {
        let sig = tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.kind.is_trivia())
            .map(|(i, _)| i)
            .collect();
        View { tokens, sig }
    }

    fn len(&self) -> usize {
        self.sig.len()
    }

    fn tok(&self, pos: usize) -> &'a Token {
        &self.tokens[self.sig[pos]]
    }

    fn get(&self, pos: Option<usize>) -> Option<&'a Token> {
        pos.filter(|p| *p < self.sig.len()).map(|p| self.tok(p))
    }

    fn prev(&self, pos: usize) -> Option<&'a Token> {
        self.get(pos.checked_sub(1))
    }

    fn next(&self, pos: usize) -> Option<&'a Token> {
        self.get(Some(pos + 1))
    }

    fn text_is(&self, pos: Option<usize>, text: &str) -> bool {
        self.get(pos).is_some_and(|t| t.text == text && !matches!(t.kind, TokenKind::StringLiteral))
    }

    fn is_ident(&self, pos: usize) -> bool {
        self.tok(pos).kind == TokenKind::Identifier
    }

    fn keyword_is(&self, pos: Option<usize>, words: &[&str]) -> bool {
        self.get(pos)
            .is_some_and(|t| t.kind == TokenKind::Keyword && words.contains(&t.text.as_str()))
    }

    /// Is there a newline between significant positions `a` and `a + 1`?
    fn newline_after(&self, pos: usize) -> bool {
        let from = self.sig[pos] + 1;
        let to = self.sig.get(pos + 1).copied().unwrap_or(self.tokens.len());
        self.tokens[from..to]
            .iter()
            .any(|t| t.kind == TokenKind::Layout && (t.text.contains('\n') || t.text.contains('\r')))
    }
}

fn is_dunder(name: &str) -> bool {
    name.len() > 4 && name.starts_with("__") && name.ends_with("__")
}

// ---------------------------------------------------------------- Python

fn classify_python(view: &View<'_>) -> Vec<Site> {
    let lang = SourceLanguage::Python;
    let n = view.len();
    let mut imported: HashSet<&str> = HashSet::new();
    let mut bound: HashSet<&str> = HashSet::new();
    let mut keyword_args: HashSet<usize> = HashSet::new();

    // One pass to collect import-introduced names, local bindings and
    // keyword-argument positions.
    let mut brackets: Vec<Bracket> = Vec::new();
    let mut in_import = false;
    let mut in_for_target = false;
    for p in 0..n {
        let tok = view.tok(p);
        let text = tok.text.as_str();
        match tok.kind {
            TokenKind::Keyword if text == "import" || text == "from" => {
                if p == 0 || view.newline_after(p - 1) || view.text_is(p.checked_sub(1), ";") {
                    in_import = true;
                }
            }
            TokenKind::Keyword if text == "for" => in_for_target = true,
            TokenKind::Keyword if text == "in" => in_for_target = false,
            TokenKind::Punctuation if matches!(text, "(" | "[" | "{") => {
                let kind = if text != "(" {
                    Bracket::Other
                } else if view.keyword_is(p.checked_sub(2), &["def"]) {
                    Bracket::DefParams
                } else if view.keyword_is(p.checked_sub(2), &["class"])
                    || view.prev(p).is_some_and(|t| {
                        t.kind == TokenKind::Identifier || matches!(t.text.as_str(), ")" | "]")
                    })
                {
                    Bracket::Call
                } else {
                    Bracket::Other
                };
                brackets.push(kind);
            }
            TokenKind::Punctuation if matches!(text, ")" | "]" | "}") => {
                brackets.pop();
            }
            TokenKind::Identifier => {
                let name = text;
                let after = view.next(p).map(|t| t.text.as_str());
                let before = view.prev(p).map(|t| t.text.as_str());
                let qualified = before == Some(".");
                if in_import && !qualified {
                    imported.insert(name);
                }
                if !qualified {
                    let opens_item = matches!(before, Some("(" | "," | "*" | "**"));
                    match brackets.last() {
                        Some(Bracket::Call) if after == Some("=") && opens_item => {
                            keyword_args.insert(p);
                        }
                        Some(Bracket::DefParams) if opens_item => {
                            bound.insert(name);
                        }
                        _ => {}
                    }
                    let assigned = matches!(
                        after,
                        Some("=" | ":=" | "+=" | "-=" | "*=" | "/=" | "//=" | "%=" | "**=" | "|=" | "&=" | "^=" | ">>=" | "<<=" | "@=")
                    );
                    if (assigned && !keyword_args.contains(&p))
                        || in_for_target
                        || view.keyword_is(p.checked_sub(1), &["as", "global", "nonlocal"])
                    {
                        bound.insert(name);
                    }
                }
            }
            _ => {}
        }
        if in_import && brackets.is_empty() && (view.newline_after(p) || view.text_is(Some(p + 1), ";")) {
            in_import = false;
        }
    }

    let mut sites = Vec::new();
    for p in 0..n {
        if !view.is_ident(p) {
            continue;
        }
        let name = view.tok(p).text.as_str();
        let prev = view.prev(p);
        let next_text = view.next(p).map(|t| t.text.as_str());
        let shadowed = bound.contains(name);
        let standard = lang.is_standard_name(name) && !shadowed;

        let site = if prev.is_some_and(|t| t.is(TokenKind::Punctuation, ".")) {
            Site { qualified: true, ..Site::new(p, NameCategory::Preserved) }
        } else if view.keyword_is(p.checked_sub(1), &["class"])
            || imported.contains(name)
            || is_dunder(name)
            || PYTHON_RECEIVERS.contains(&name)
            || keyword_args.contains(&p)
        {
            Site::new(p, NameCategory::Preserved)
        } else if view.keyword_is(p.checked_sub(1), &["def"]) {
            Site::new(p, NameCategory::Definition)
        } else if standard {
            Site::new(p, NameCategory::Preserved)
        } else if next_text == Some("(") {
            Site::new(p, NameCategory::Invocation)
        } else {
            Site {
                ambiguous: next_text == Some(".") && !shadowed,
                ..Site::new(p, NameCategory::Variable)
            }
        };
        sites.push(site);
    }
    sites
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bracket {
    Call,
    DefParams,
    Other,
}

// ------------------------------------------------------------------ Java

const JAVA_TYPE_INTRODUCERS: &[&str] = &["new", "extends", "instanceof", "class", "interface", "enum"];
const JAVA_TYPE_LISTS: &[&str] = &["throws", "implements"];
const JAVA_CONTROL: &[&str] = &["if", "while", "for", "switch", "synchronized", "catch"];

struct JavaTypes {
    /// Positions of identifiers that name a type.
    types: HashSet<usize>,
    /// Closing `>` positions of type-argument lists that close a type.
    type_arg_closers: HashSet<usize>,
    /// Closing `>` positions of explicit call type arguments (`obj.<T>m()`).
    call_type_arg_closers: HashSet<usize>,
}

fn java_type_positions(view: &View<'_>) -> JavaTypes {
    let n = view.len();
    let mut out = JavaTypes {
        types: HashSet::new(),
        type_arg_closers: HashSet::new(),
        call_type_arg_closers: HashSet::new(),
    };

    for p in 0..n {
        let tok = view.tok(p);
        if tok.is(TokenKind::Operator, "<") {
            let opener_ok = p > 0
                && (view.is_ident(p - 1)
                    || view.text_is(Some(p - 1), ".")
                    || view.keyword_is(Some(p - 1), JAVA_MODIFIERS));
            if !opener_ok {
                continue;
            }
            if let Some(close) = parse_type_args(view, p) {
                for q in p + 1..close {
                    if view.is_ident(q) && !view.text_is(q.checked_sub(1), ".") {
                        out.types.insert(q);
                    }
                }
                if view.text_is(Some(p - 1), ".") {
                    out.call_type_arg_closers.insert(close);
                } else {
                    if view.is_ident(p - 1) {
                        out.types.insert(p - 1);
                    }
                    out.type_arg_closers.insert(close);
                }
            }
        }
    }

    let mut in_type_list = false;
    for p in 0..n {
        let tok = view.tok(p);
        if tok.kind == TokenKind::Keyword && JAVA_TYPE_LISTS.contains(&tok.text.as_str()) {
            in_type_list = true;
            continue;
        }
        if matches!(tok.text.as_str(), "{" | ";") && tok.kind == TokenKind::Punctuation {
            in_type_list = false;
        }
        if tok.kind != TokenKind::Identifier {
            continue;
        }
        let name = tok.text.as_str();
        let next = view.next(p);
        let qualified = view.text_is(p.checked_sub(1), ".");
        let is_type = (in_type_list && !qualified)
            || next.is_some_and(|t| t.kind == TokenKind::Identifier)
            || (view.text_is(Some(p + 1), "[") && view.text_is(Some(p + 2), "]"))
            || view.text_is(Some(p + 1), "...")
            || view.keyword_is(p.checked_sub(1), JAVA_TYPE_INTRODUCERS)
            || (!qualified && starts_camel_case(name) && view.text_is(Some(p + 1), "."))
            || is_cast(view, p);
        if is_type {
            out.types.insert(p);
        }
    }
    out
}

/// `Foo`, `HashMap`: an upper-case initial followed somewhere by lower case.
fn starts_camel_case(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_uppercase()) && name.chars().any(|c| c.is_lowercase())
}

/// `(Foo) expr` where the parenthesis does not belong to a call or statement.
fn is_cast(view: &View<'_>, p: usize) -> bool {
    let name = &view.tok(p).text;
    if !(p > 0 && view.text_is(Some(p - 1), "(") && view.text_is(Some(p + 1), ")")) {
        return false;
    }
    if !name.chars().next().is_some_and(|c| c.is_uppercase()) {
        return false;
    }
    if p >= 2 && (view.is_ident(p - 2) || view.keyword_is(Some(p - 2), JAVA_CONTROL)) {
        return false;
    }
    match view.get(Some(p + 2)) {
        Some(t) => match t.kind {
            TokenKind::Identifier | TokenKind::NumberLiteral | TokenKind::StringLiteral => true,
            TokenKind::Keyword => matches!(t.text.as_str(), "this" | "new" | "super" | "true" | "false" | "null"),
            _ => matches!(t.text.as_str(), "(" | "!" | "~"),
        },
        None => false,
    }
}

/// Try to read a type-argument list opened at `open`. Returns the position
/// of the `>` (or `>>`, `>>>`) that closes it.
fn parse_type_args(view: &View<'_>, open: usize) -> Option<usize> {
    let mut depth: i32 = 1;
    let mut p = open + 1;
    while p < view.len() {
        let tok = view.tok(p);
        let text = tok.text.as_str();
        match tok.kind {
            TokenKind::Identifier => {}
            TokenKind::Keyword
                if matches!(text, "extends" | "super") || JAVA_PRIMITIVE_TYPES.contains(&text) => {}
            TokenKind::Punctuation if matches!(text, "." | "," | "[" | "]" | "@") => {}
            TokenKind::Operator => match text {
                "<" => depth += 1,
                ">" | ">>" | ">>>" => {
                    depth -= text.len() as i32;
                    if depth == 0 {
                        return Some(p);
                    }
                    if depth < 0 {
                        return None;
                    }
                }
                "&" => {}
                "?" => {
                    let follows = view.get(Some(p + 1))?;
                    let ok = matches!(follows.text.as_str(), "extends" | "super" | "," | ">" | ">>" | ">>>");
                    if !ok {
                        return None;
                    }
                }
                _ => return None,
            },
            _ => return None,
        }
        p += 1;
    }
    None
}

fn classify_java(view: &View<'_>) -> Vec<Site> {
    let lang = SourceLanguage::Java;
    let JavaTypes { types, type_arg_closers, call_type_arg_closers } = java_type_positions(view);
    let mut sites = Vec::new();

    for p in 0..view.len() {
        if !view.is_ident(p) {
            continue;
        }
        let name = view.tok(p).text.as_str();
        let prev = p.checked_sub(1);
        let calls = view.text_is(Some(p + 1), "(");

        let qualified = view.text_is(prev, ".")
            || view.text_is(prev, "::")
            || prev.is_some_and(|q| call_type_arg_closers.contains(&q));
        let site = if qualified {
            Site { qualified: true, ..Site::new(p, NameCategory::Preserved) }
        } else if view.text_is(prev, "@") {
            Site::new(p, NameCategory::Preserved)
        } else if calls && java_declares_method(view, p, &type_arg_closers) {
            Site::new(p, NameCategory::Definition)
        } else if calls && (view.keyword_is(prev, JAVA_MODIFIERS) || (p == 0 && starts_camel_case(name))) {
            // constructor header
            Site::new(p, NameCategory::Preserved)
        } else if types.contains(&p) || lang.is_standard_name(name) {
            Site::new(p, NameCategory::Preserved)
        } else if calls {
            Site::new(p, NameCategory::Invocation)
        } else {
            let receiver = view.text_is(Some(p + 1), ".");
            let upper = name.chars().next().is_some_and(|c| c.is_uppercase());
            Site { ambiguous: receiver && upper, ..Site::new(p, NameCategory::Variable) }
        };
        sites.push(site);
    }
    sites
}

/// Identifier before `(` preceded by a return type: `void f(`, `Foo f(`,
/// `List<T> f(`, `int[] f(`.
fn java_declares_method(view: &View<'_>, p: usize, type_arg_closers: &HashSet<usize>) -> bool {
    let Some(prev) = p.checked_sub(1) else { return false };
    let tok = view.tok(prev);
    match tok.kind {
        TokenKind::Identifier => true,
        TokenKind::Keyword => JAVA_PRIMITIVE_TYPES.contains(&tok.text.as_str()),
        TokenKind::Operator => type_arg_closers.contains(&prev),
        TokenKind::Punctuation => tok.text == "]" && view.text_is(prev.checked_sub(1), "["),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::tokenize;
    use NameCategory::*;

    fn inv(src: &str, lang: SourceLanguage) -> NameInventory {
        classify_names(&tokenize(src, lang).unwrap())
    }

    fn py(src: &str) -> NameInventory {
        inv(src, SourceLanguage::Python)
    }

    fn java(src: &str) -> NameInventory {
        inv(src, SourceLanguage::Java)
    }

    /// Category of the first occurrence of `name`.
    fn cat(inv: &NameInventory, name: &str) -> NameCategory {
        inv.occurrences.iter().find(|o| o.name == name).unwrap_or_else(|| panic!("{name} missing")).category
    }

    #[test]
    fn python_definition() {
        let i = py("def bubble_sort(arr):\n    pass\n");
        assert_eq!(cat(&i, "bubble_sort"), Definition);
        assert_eq!(cat(&i, "arr"), Variable);
    }

    #[test]
    fn python_assignment_is_variable() {
        assert_eq!(cat(&py("finished = False"), "finished"), Variable);
    }

    #[test]
    fn python_called_parameter_is_invocation() {
        let i = py("def f(pred, a, b):\n    return pred(a, b)\n");
        assert_eq!(cat(&i, "pred"), Invocation);
        // parameter site shares the symbol category
        let sites: Vec<_> = i.occurrences.iter().filter(|o| o.name == "pred").map(|o| o.site).collect();
        assert_eq!(sites, vec![Variable, Invocation]);
        assert!(i.occurrences.iter().filter(|o| o.name == "pred").all(|o| o.category == Invocation));
    }

    #[test]
    fn python_qualified_call_preserved() {
        let i = py("math.sqrt(x)");
        let sqrt = i.occurrences.iter().find(|o| o.name == "sqrt").unwrap();
        assert_eq!(sqrt.category, Preserved);
        assert!(sqrt.qualified);
        assert_eq!(cat(&i, "math"), Preserved);
        assert_eq!(cat(&i, "x"), Variable);
    }

    #[test]
    fn python_builtin_preserved() {
        assert_eq!(cat(&py("print(x)"), "print"), Preserved);
    }

    #[test]
    fn python_locally_bound_builtin_is_renameable() {
        let i = py("next = it + 1\nreturn next");
        assert_eq!(cat(&i, "next"), Variable);
        let i = py("for id in ids:\n    use(id)");
        assert_eq!(cat(&i, "id"), Variable);
    }

    #[test]
    fn python_recursion_shares_definition_symbol() {
        let i = py("def fact(n):\n    return n * fact(n - 1)\n");
        assert!(i.occurrences.iter().filter(|o| o.name == "fact").all(|o| o.category == Definition));
        assert_eq!(i.count(Definition), 1);
        assert_eq!(i.count(Invocation), 0);
    }

    #[test]
    fn python_keyword_arguments_preserved() {
        let i = py("def f(key=1):\n    return g(key=key)\n");
        let keys: Vec<_> = i.occurrences.iter().filter(|o| o.name == "key").map(|o| o.category).collect();
        assert_eq!(keys, vec![Variable, Preserved, Variable]);
    }

    #[test]
    fn python_imports_preserved() {
        let i = py("def f(p):\n    from os.path import join\n    import numpy as np\n    return np.array(join(p))\n");
        assert_eq!(cat(&i, "join"), Preserved);
        assert_eq!(cat(&i, "np"), Preserved);
        assert_eq!(cat(&i, "numpy"), Preserved);
        assert_eq!(cat(&i, "p"), Variable);
    }

    #[test]
    fn python_self_class_and_dunders() {
        let i = py("class Foo(Base):\n    def __init__(self, v):\n        self.v = v\n");
        assert_eq!(cat(&i, "Foo"), Preserved);
        assert_eq!(cat(&i, "__init__"), Preserved);
        assert_eq!(cat(&i, "self"), Preserved);
        assert_eq!(cat(&i, "v"), Variable);
        assert_eq!(cat(&i, "Base"), Variable);
    }

    #[test]
    fn python_no_def_means_no_definitions() {
        let i = py("x = compute(y)\nprint(x)");
        assert_eq!(i.count(Definition), 0);
        assert_eq!(i.count(Invocation), 1);
    }

    #[test]
    fn strings_and_comments_are_not_names() {
        let i = py("x = 'y' # z\n");
        assert_eq!(i.occurrences.len(), 1);
    }

    #[test]
    fn ambiguous_receivers_are_counted() {
        let i = py("def f():\n    return requests.get(u)\n");
        assert_eq!(cat(&i, "requests"), Variable);
        assert_eq!(i.stats.ambiguous, 1);
    }

    #[test]
    fn java_method_header() {
        let i = java("public static int sum(int[] values, List<Integer> extra) throws IOException {\n  int total = 0;\n  for (int v : values) total += v;\n  return helper(total, extra.size());\n}");
        assert_eq!(cat(&i, "sum"), Definition);
        assert_eq!(cat(&i, "values"), Variable);
        assert_eq!(cat(&i, "List"), Preserved);
        assert_eq!(cat(&i, "Integer"), Preserved);
        assert_eq!(cat(&i, "IOException"), Preserved);
        assert_eq!(cat(&i, "total"), Variable);
        assert_eq!(cat(&i, "helper"), Invocation);
        let size = i.occurrences.iter().find(|o| o.name == "size").unwrap();
        assert!(size.qualified);
    }

    #[test]
    fn java_generic_return_type() {
        let i = java("public <T> Map<String, List<T>> group(Collection<T> items) { return Collections.<T>emptyMap(); }");
        assert_eq!(cat(&i, "group"), Definition);
        assert_eq!(cat(&i, "T"), Preserved);
        assert_eq!(cat(&i, "items"), Variable);
        let empty = i.occurrences.iter().find(|o| o.name == "emptyMap").unwrap();
        assert!(empty.qualified);
    }

    #[test]
    fn java_comparisons_are_not_generics() {
        let i = java("void f(int a, int b) { if (a < b && b > c) g(a); boolean z = a < b; }");
        assert_eq!(cat(&i, "a"), Variable);
        assert_eq!(cat(&i, "b"), Variable);
        assert_eq!(cat(&i, "c"), Variable);
        assert_eq!(cat(&i, "g"), Invocation);
    }

    #[test]
    fn java_types_in_new_casts_and_static_receivers() {
        let i = java("void f(Object o) { Foo x = new Foo(1); String s = (String) o; int m = Math.max(1, 2); if (flag) run(); }");
        assert_eq!(cat(&i, "Foo"), Preserved);
        assert_eq!(cat(&i, "String"), Preserved);
        assert_eq!(cat(&i, "Math"), Preserved);
        assert_eq!(cat(&i, "flag"), Variable);
        assert_eq!(cat(&i, "run"), Invocation);
        assert_eq!(cat(&i, "o"), Variable);
    }

    #[test]
    fn java_annotations_and_constructors() {
        let i = java("@Override\npublic Widget(int size) { this.size = size; }");
        assert_eq!(cat(&i, "Override"), Preserved);
        assert_eq!(cat(&i, "Widget"), Preserved);
        assert_eq!(cat(&i, "size"), Variable);
        assert_eq!(i.count(Definition), 0);
    }

    #[test]
    fn java_anonymous_class_method_is_definition() {
        let i = java("void start() { Thread t = new Thread(new Runnable() { public void run() { work(); } }); }");
        assert_eq!(cat(&i, "start"), Definition);
        assert_eq!(cat(&i, "run"), Definition);
        assert_eq!(cat(&i, "work"), Invocation);
        assert_eq!(cat(&i, "Runnable"), Preserved);
    }

    #[test]
    fn every_identifier_once_and_no_other_kinds() {
        let src = "public int f(int a) { // b\n return \"c\" + a + g(a); }";
        let stream = tokenize(src, SourceLanguage::Java).unwrap();
        let i = classify_names(&stream);
        let idents: Vec<usize> = stream
            .tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| t.kind == TokenKind::Identifier)
            .map(|(k, _)| k)
            .collect();
        let got: Vec<usize> = i.occurrences.iter().map(|o| o.token_index).collect();
        assert_eq!(got, idents);
    }

    #[test]
    fn category_parsing() {
        assert_eq!("var".parse::<NameCategory>().unwrap(), Variable);
        assert_eq!("DEF".parse::<NameCategory>().unwrap(), Definition);
        assert!("type".parse::<NameCategory>().is_err());
    }
}
