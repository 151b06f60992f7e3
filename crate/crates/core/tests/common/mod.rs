#![allow(dead_code)]

//! Seeded generators for snippets and corpora used by the integration tests.

pub mod listing;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use litmask_core::{tokenize, SourceLanguage, TokenKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONSONANTS: &[u8] = b"bdfgklmnprstvz";
const VOWELS: &[u8] = b"aeiou";

/// Pronounceable made-up words that are not keywords or standard names in
/// either language.
pub struct Words {
    rng: ChaCha8Rng,
    used: BTreeSet<String>,
}

impl Words {
    pub fn new(seed: u64) -> Self {
        Words { rng: ChaCha8Rng::seed_from_u64(seed), used: BTreeSet::new() }
    }

    fn raw(&mut self) -> String {
        let syllables = self.rng.gen_range(2..=3);
        let mut w = String::new();
        for _ in 0..syllables {
            w.push(*CONSONANTS.choose(&mut self.rng).unwrap() as char);
            w.push(*VOWELS.choose(&mut self.rng).unwrap() as char);
        }
        w
    }

    fn acceptable(w: &str) -> bool {
        SourceLanguage::ALL.iter().all(|l| !l.is_keyword(w) && !l.is_standard_name(w))
    }

    /// A word not handed out before by this generator.
    pub fn fresh(&mut self) -> String {
        loop {
            let w = self.raw();
            if Self::acceptable(&w) && self.used.insert(w.clone()) {
                return w;
            }
        }
    }

    /// Any acceptable word, possibly repeated.
    pub fn any(&mut self) -> String {
        loop {
            let w = self.raw();
            if Self::acceptable(&w) {
                return w;
            }
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

pub fn snake(parts: &[String]) -> String {
    parts.join("_")
}

pub fn camel(parts: &[String]) -> String {
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        let mut cs = p.chars();
        if let Some(c) = cs.next() {
            out.push(c.to_ascii_uppercase());
            out.extend(cs);
        }
    }
    out
}

fn name(words: &mut Words, parts: usize, java: bool) -> String {
    let parts: Vec<String> = (0..parts).map(|_| words.any()).collect();
    if java {
        camel(&parts)
    } else {
        snake(&parts)
    }
}

/// A random but syntactically plausible Python function (sometimes wrapped
/// in a class), exercising calls, attributes, imports, keyword arguments,
/// strings, comments, numbers and nested blocks.
pub fn python_snippet(rng_seed: u64) -> String {
    let mut w = Words::new(rng_seed);
    let mut vars: Vec<String> = (0..w.rng().gen_range(1..5)).map(|_| String::new()).collect();
    for v in vars.iter_mut() {
        *v = name(&mut w, 1 + (rng_seed as usize % 2), false);
    }
    let fname = name(&mut w, 2, false);
    let mut s = String::new();
    let in_class = w.rng().gen_bool(0.2);
    let indent = if in_class { "    " } else { "" };
    if w.rng().gen_bool(0.3) {
        s.push_str("import os\nfrom collections import deque\n\n");
    }
    if in_class {
        let cls = camel(&[w.any(), w.any()]);
        let _ = writeln!(s, "class {}{}:", cls[..1].to_uppercase(), &cls[1..]);
    }
    let params: Vec<String> = vars.iter().take(2).cloned().collect();
    let receiver = if in_class { "self, " } else { "" };
    let default = if w.rng().gen_bool(0.3) { format!(", {}=None", name(&mut w, 1, false)) } else { String::new() };
    let _ = writeln!(s, "{indent}def {fname}({receiver}{}{default}):", params.join(", "));
    let body = format!("{indent}    ");
    if w.rng().gen_bool(0.4) {
        let _ = writeln!(s, "{body}\"\"\"{} the {}.\"\"\"", w.any(), w.any());
    }
    let stmts = w.rng().gen_range(2..8);
    for _ in 0..stmts {
        let v = vars.choose(w.rng()).unwrap().clone();
        let u = vars.choose(w.rng()).unwrap().clone();
        match w.rng().gen_range(0..11) {
            0 => {
                let _ = writeln!(s, "{body}{v} = {u} + {}", w.rng().gen_range(0..100));
            }
            1 => {
                let helper = name(&mut w, 2, false);
                let kw = w.any();
                let _ = writeln!(s, "{body}{v} = {helper}({u}, {kw}=0x1F)");
            }
            2 => {
                let m = w.any();
                let _ = writeln!(s, "{body}{v} = {u}.{m}(len({u}))");
            }
            3 => {
                let loop_var = name(&mut w, 1, false);
                let _ = writeln!(s, "{body}for {loop_var} in range({}):", w.rng().gen_range(1..9));
                let _ = writeln!(s, "{body}    {v} += {loop_var}  # {u} grows");
                vars.push(loop_var);
            }
            4 => {
                let _ = writeln!(s, "{body}if {v} > 3.5e2 and not {u}:");
                let _ = writeln!(s, "{body}    return '{u} is done'");
            }
            5 => {
                let _ = writeln!(s, "{body}{v} = os.path.join(str({u}), \"{fname}\")");
            }
            6 => {
                let _ = writeln!(s, "{body}# {v} then {u}");
            }
            7 => {
                let _ = writeln!(s, "{body}{v} = [{u} for {u} in deque([{v}])]");
            }
            8 if in_class => {
                let attr = w.any();
                let _ = writeln!(s, "{body}self.{attr} = {v}");
            }
            9 => {
                let _ = writeln!(s, "{body}{v} = f\"{{{u}}} items\"");
            }
            _ => {
                let _ = writeln!(s, "{body}{v} = {fname}({u}) if {u} else {v}");
            }
        }
    }
    let ret = vars.choose(w.rng()).unwrap().clone();
    let _ = writeln!(s, "{body}return {ret}");
    s
}

/// A random Java method exercising generics, casts, constructors, static
/// receivers, string and char literals, comments and nested blocks.
pub fn java_snippet(rng_seed: u64) -> String {
    let mut w = Words::new(rng_seed ^ 0x5bd1_e995);
    let mut vars: Vec<String> = (0..w.rng().gen_range(1..5)).map(|_| String::new()).collect();
    for v in vars.iter_mut() {
        *v = name(&mut w, 1 + (rng_seed as usize % 2), true);
    }
    let fname = name(&mut w, 2, true);
    let mut s = String::new();
    if w.rng().gen_bool(0.3) {
        let _ = writeln!(s, "/** {} the {}. */", w.any(), w.any());
    }
    if w.rng().gen_bool(0.2) {
        s.push_str("@Override\n");
    }
    let params: Vec<String> = vars.iter().take(2).map(|v| format!("int {v}")).collect();
    let _ = writeln!(s, "public static int {fname}({}) throws IOException {{", params.join(", "));
    for v in vars.iter().skip(2) {
        let _ = writeln!(s, "    int {v} = {};", w.rng().gen_range(0..50));
    }
    let stmts = w.rng().gen_range(2..8);
    for _ in 0..stmts {
        let v = vars.choose(w.rng()).unwrap().clone();
        let u = vars.choose(w.rng()).unwrap().clone();
        match w.rng().gen_range(0..10) {
            0 => {
                let _ = writeln!(s, "    {v} = {u} + {}L > 0 ? {v} : {u};", w.rng().gen_range(0..100));
            }
            1 => {
                let helper = name(&mut w, 2, true);
                let _ = writeln!(s, "    {v} = {helper}({u}, 'c');");
            }
            2 => {
                let list = name(&mut w, 1, true);
                let _ = writeln!(s, "    List<Map<String, Integer>> {list} = new ArrayList<>();");
                let _ = writeln!(s, "    {list}.add(new HashMap<String, Integer>());");
                let _ = writeln!(s, "    {v} += {list}.size();");
            }
            3 => {
                let i = name(&mut w, 1, true);
                let _ = writeln!(s, "    for (int {i} = 0; {i} < {u}; {i}++) {{ {v} += {i}; }}");
            }
            4 => {
                let _ = writeln!(s, "    if ({v} >= 0x7f && {u} != 0) {{ return {v} >> 1; }}");
            }
            5 => {
                let _ = writeln!(s, "    {v} = Math.max({v}, (int) {u});");
            }
            6 => {
                let _ = writeln!(s, "    // {v} then {u}");
            }
            7 => {
                let _ = writeln!(s, "    String text = \"{fname} \" + {u};");
                let _ = writeln!(s, "    System.out.println(text.trim());");
            }
            8 => {
                let _ = writeln!(s, "    {v} = {fname}({u}, {v});");
            }
            _ => {
                let _ = writeln!(s, "    /* {u} */ {v} *= 2.5e1 > {u} ? 1 : 2;");
            }
        }
    }
    let ret = vars.choose(w.rng()).unwrap().clone();
    let _ = writeln!(s, "    return {ret};\n}}");
    s
}

pub fn snippet(language: SourceLanguage, seed: u64) -> String {
    match language {
        SourceLanguage::Python => python_snippet(seed),
        SourceLanguage::Java => java_snippet(seed),
    }
}

/// Significant token texts, the way code_tokens lists are built.
pub fn code_tokens(code: &str, language: SourceLanguage) -> Vec<String> {
    tokenize(code, language)
        .expect("generated code lexes")
        .tokens
        .into_iter()
        .filter(|t| !t.kind.is_trivia())
        .map(|t| t.text)
        .collect()
}

pub fn json_string(s: &str) -> String {
    serde_json::to_string(s).unwrap()
}

/// One code-search JSONL line with extra fields written in a deliberately
/// irregular style (spacing, number spelling, escapes) so byte preservation
/// is observable.
pub fn code_search_line(i: usize, language: SourceLanguage, code: &str, docstring_tokens: &[String]) -> String {
    let tokens = serde_json::to_string(&code_tokens(code, language)).unwrap();
    let doc = serde_json::to_string(docstring_tokens).unwrap();
    format!(
        "{{\"repo\": \"org{m}/proj\", \"path\": \"src/m{i}.{ext}\", \"url\": \"https://example.org/r/{i}\", \
\"func_name\":\"f{i}\", \"original_string\": {orig}, \"language\": \"{lang}\", \"code\": {code}, \
\"code_tokens\": {tokens}, \"docstring\": \"caf\\u00e9 {i}\", \"docstring_tokens\": {doc}, \
\"sha\": \"{sha:040x}\", \"partition\": \"test\", \"score\": {score}.50, \"tags\" : [1, 2.0e0, null, true]}}",
        m = i % 7,
        ext = if language == SourceLanguage::Python { "py" } else { "java" },
        orig = json_string(code),
        lang = language.as_str(),
        code = json_string(code),
        sha = (i as u128).wrapping_mul(0x9e37_79b9_7f4a_7c15),
        score = i % 10,
    )
}

/// A code-search record whose docstring is built from the identifier
/// sub-tokens of its code; every record uses its own vocabulary.
pub struct SearchFixture {
    pub code: String,
    pub docstring_tokens: Vec<String>,
}

pub fn search_fixture(words: &mut Words) -> SearchFixture {
    let fname = [words.fresh(), words.fresh()];
    let helper = [words.fresh(), words.fresh()];
    let a = words.fresh();
    let b = [words.fresh(), words.fresh()];
    let code = format!(
        "def {f}({a}, {b}):\n    {b} = {h}({a}, {b})\n    return {a} + {b}\n",
        f = snake(&fname),
        h = snake(&helper),
        b = snake(&b),
    );
    let mut doc: Vec<String> = vec![fname[0].clone(), fname[1].clone(), helper[1].clone(), a, b[0].clone()];
    doc.push("the".into());
    SearchFixture { code, docstring_tokens: doc }
}

/// The identifier kinds of a stream, as a compact check on structure.
pub fn kinds(code: &str, language: SourceLanguage) -> Vec<TokenKind> {
    tokenize(code, language).unwrap().kinds()
}
