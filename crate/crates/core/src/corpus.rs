//! Builtin group families, the `.grp` line format and corpus loading.
//!
//! ```text
//! # comment
//! name s3
//! degree 3
//! gen (1 2)
//! gen (1 2 3)
//! auto swap
//! map (1 2)
//! map (1 3 2)
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::engel::{holomorph_extension, AutomorphismMap, DEFAULT_EXTENSION_CAP};
use crate::error::{Error, Result};
use crate::group::{close_group, GroupHandle};
use crate::perm::Permutation;

/// Name of the corpus shipped with the crate.
pub const SMALL_STD: &str = "small-std";

const SMALL_STD_BUILTINS: &[&str] = &[
    "cyclic(1)",
    "cyclic(7)",
    "cyclic(12)",
    "dihedral(4)",
    "dihedral(5)",
    "dihedral(6)",
    "symmetric(3)",
    "symmetric(4)",
    "symmetric(5)",
    "symmetric(6)",
    "alternating(4)",
    "alternating(5)",
    "alternating(6)",
    "alternating(7)",
    "sl2(3)",
    "sl2(5)",
    "sl2(7)",
    "direct_product(symmetric(3),cyclic(2))",
    "direct_product(alternating(5),alternating(5))",
    "holomorph_ext(cyclic(5),inversion)",
    "holomorph_ext(alternating(5),inner((1 2)))",
];

const SMALL_STD_FILES: &[(&str, &str)] = &[
    ("c2xa5.grp", include_str!("../corpus/small-std/c2xa5.grp")),
    ("s4xs3.grp", include_str!("../corpus/small-std/s4xs3.grp")),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Builtin(String),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct NamedAutomorphism {
    pub name: String,
    pub map: AutomorphismMap,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub group: GroupHandle,
    pub automorphisms: Vec<NamedAutomorphism>,
    pub provenance: Provenance,
}

impl CorpusEntry {
    pub fn automorphism(&self, name: &str) -> Option<&AutomorphismMap> {
        self.automorphisms.iter().find(|a| a.name == name).map(|a| &a.map)
    }

    /// The entry in `.grp` form; parsing the result gives the same group.
    /// Whitespace in the name becomes `_`, since names are single tokens.
    pub fn to_grp(&self) -> String {
        let mut out = String::new();
        writeln!(out, "name {}", self.name.replace(char::is_whitespace, "_")).unwrap();
        writeln!(out, "degree {}", self.group.degree()).unwrap();
        for g in self.group.generators() {
            writeln!(out, "gen {g}").unwrap();
        }
        for a in &self.automorphisms {
            writeln!(out, "auto {}", a.name).unwrap();
            for im in a.map.generator_images() {
                writeln!(out, "map {im}").unwrap();
            }
        }
        out
    }
}

fn named(name: &str, map: AutomorphismMap) -> NamedAutomorphism {
    NamedAutomorphism {
        name: name.to_string(),
        map,
    }
}

fn perms(list: &[&str], degree: usize) -> Vec<Permutation> {
    list.iter().map(|s| Permutation::parse(s, degree).expect("builtin generator")).collect()
}

fn cycle_of(points: impl Iterator<Item = usize>) -> String {
    let body: Vec<String> = points.map(|p| p.to_string()).collect();
    format!("({})", body.join(" "))
}

fn out_of_range(what: &str, n: usize) -> Error {
    Error::OutOfRange(format!("{what}({n})"))
}

fn cyclic(n: usize, cap: usize) -> Result<(GroupHandle, Vec<NamedAutomorphism>)> {
    if n == 0 {
        return Err(out_of_range("cyclic", n));
    }
    let g = close_group(&perms(&[&cycle_of(1..=n)], n), cap)?;
    let autos = if n > 2 {
        vec![named("inversion", AutomorphismMap::inversion(&g)?)]
    } else {
        Vec::new()
    };
    Ok((g, autos))
}

fn dihedral(n: usize, cap: usize) -> Result<GroupHandle> {
    let gens = match n {
        0 => return Err(out_of_range("dihedral", n)),
        1 => perms(&["(1 2)"], 2),
        2 => perms(&["(1 2)(3 4)", "(1 3)(2 4)"], 4),
        _ => {
            let rotation = cycle_of(1..=n);
            let reflection: String = (2..=n)
                .filter(|&i| i < n + 2 - i)
                .map(|i| format!("({} {})", i, n + 2 - i))
                .collect();
            perms(&[&rotation, &reflection], n)
        }
    };
    close_group(&gens, cap)
}

fn transposition_auto(g: &GroupHandle) -> Result<Vec<NamedAutomorphism>> {
    if g.degree() < 2 || g.order() < 3 {
        return Ok(Vec::new());
    }
    let t = Permutation::parse("(1 2)", g.degree())?;
    Ok(vec![named("inner_12", AutomorphismMap::inner(g, &t)?)])
}

fn symmetric(n: usize, cap: usize) -> Result<GroupHandle> {
    if !(1..=7).contains(&n) {
        return Err(out_of_range("symmetric", n));
    }
    let gens = match n {
        1 => perms(&["()"], 1),
        2 => perms(&["(1 2)"], 2),
        _ => perms(&["(1 2)", &cycle_of(1..=n)], n),
    };
    close_group(&gens, cap)
}

fn alternating(n: usize, cap: usize) -> Result<GroupHandle> {
    if !(1..=7).contains(&n) {
        return Err(out_of_range("alternating", n));
    }
    let gens: Vec<Permutation> = if n < 3 {
        perms(&["()"], n)
    } else {
        (3..=n)
            .map(|k| Permutation::parse(&format!("(1 2 {k})"), n).expect("3-cycle"))
            .collect()
    };
    close_group(&gens, cap)
}

/// `SL(2, p)` acting on the nonzero row vectors of `F_p²`, numbered
/// lexicographically from 1.
fn sl2(p: usize, cap: usize) -> Result<GroupHandle> {
    if ![3, 5, 7].contains(&p) {
        return Err(out_of_range("sl2", p));
    }
    let point = |a: usize, b: usize| (a * p + b) as u32 - 1;
    let matrix = |m: [[usize; 2]; 2]| {
        let mut images = Vec::with_capacity(p * p - 1);
        for a in 0..p {
            for b in 0..p {
                if a == 0 && b == 0 {
                    continue;
                }
                let x = (a * m[0][0] + b * m[1][0]) % p;
                let y = (a * m[0][1] + b * m[1][1]) % p;
                images.push(point(x, y));
            }
        }
        Permutation::from_raw(images)
    };
    let gens = [matrix([[1, 1], [0, 1]]), matrix([[0, p - 1], [1, 0]])];
    close_group(&gens, cap)
}

/// `A × B` on the disjoint union of the point sets, `A` first.
pub fn direct_product(a: &CorpusEntry, b: &CorpusEntry, cap: usize) -> Result<CorpusEntry> {
    let (da, db) = (a.group.degree(), b.group.degree());
    let shift = |p: &Permutation, offset: usize, other: usize, first: bool| {
        let mut images: Vec<u32> = Vec::with_capacity(da + db);
        if !first {
            images.extend(0..other as u32);
        }
        images.extend(p.images().iter().map(|&x| x + offset as u32));
        if first {
            images.extend(da as u32..(da + db) as u32);
        }
        Permutation::from_raw(images)
    };
    let left: Vec<Permutation> = a.group.generators().iter().map(|p| shift(p, 0, 0, true)).collect();
    let right: Vec<Permutation> = b.group.generators().iter().map(|p| shift(p, da, da, false)).collect();
    let gens: Vec<Permutation> = left.iter().chain(&right).cloned().collect();
    let group = close_group(&gens, cap)?;
    let mut automorphisms = Vec::new();
    for x in &a.automorphisms {
        let images = x
            .map
            .generator_images()
            .iter()
            .map(|p| shift(p, 0, 0, true))
            .chain(right.iter().cloned())
            .collect();
        automorphisms.push(named(&format!("left_{}", x.name), AutomorphismMap::new(&group, images)?));
    }
    for y in &b.automorphisms {
        let images = left
            .iter()
            .cloned()
            .chain(y.map.generator_images().iter().map(|p| shift(p, da, da, false)))
            .collect();
        automorphisms.push(named(&format!("right_{}", y.name), AutomorphismMap::new(&group, images)?));
    }
    Ok(CorpusEntry {
        name: format!("direct_product({},{})", a.name, b.name),
        group,
        automorphisms,
        provenance: Provenance::Builtin(String::new()),
    })
}

struct SpecParser<'a> {
    text: &'a str,
    pos: usize,
    cap: usize,
}

impl<'a> SpecParser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            token: self.text[self.pos.min(self.text.len())..].to_string(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        let word = self.ident()?;
        word.parse().map_err(|_| {
            self.pos = start;
            self.error("expected a positive integer")
        })
    }

    /// Text up to the `)` matching an already consumed `(`.
    fn balanced(&mut self) -> Result<&'a str> {
        let start = self.pos;
        let mut depth = 1;
        for (i, c) in self.text[start..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos = start + i + 1;
                        return Ok(&self.text[start..start + i]);
                    }
                }
                _ => {}
            }
        }
        Err(self.error("unbalanced parentheses"))
    }

    fn entry(&mut self) -> Result<CorpusEntry> {
        let family = self.ident()?;
        self.expect('(')?;
        let (group, automorphisms, name) = match family {
            "cyclic" | "dihedral" | "symmetric" | "alternating" | "sl2" => {
                let n = self.number()?;
                self.expect(')')?;
                let (g, autos) = match family {
                    "cyclic" => cyclic(n, self.cap)?,
                    "dihedral" => (dihedral(n, self.cap)?, Vec::new()),
                    "symmetric" => {
                        let g = symmetric(n, self.cap)?;
                        let autos = transposition_auto(&g)?;
                        (g, autos)
                    }
                    "alternating" => {
                        let g = alternating(n, self.cap)?;
                        let autos = transposition_auto(&g)?;
                        (g, autos)
                    }
                    _ => (sl2(n, self.cap)?, Vec::new()),
                };
                (g, autos, format!("{family}({n})"))
            }
            "direct_product" => {
                let a = self.entry()?;
                self.expect(',')?;
                let b = self.entry()?;
                self.expect(')')?;
                let e = direct_product(&a, &b, self.cap)?;
                (e.group, e.automorphisms, e.name)
            }
            "holomorph_ext" => {
                let a = self.entry()?;
                self.expect(',')?;
                let auto_start = self.pos;
                let alpha = self.automorphism(&a)?;
                let auto_text = self.text[auto_start..self.pos].trim().to_string();
                self.expect(')')?;
                let x = holomorph_extension(&alpha, DEFAULT_EXTENSION_CAP, self.cap)?;
                // the permutation induced by alpha is the last generator
                let sigma = x.generators().last().unwrap().clone();
                let autos = if alpha.is_identity() {
                    Vec::new()
                } else {
                    vec![named("alpha", AutomorphismMap::inner(&x, &sigma)?)]
                };
                (x, autos, format!("holomorph_ext({},{})", a.name, auto_text))
            }
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        Ok(CorpusEntry {
            provenance: Provenance::Builtin(name.clone()),
            name,
            group,
            automorphisms,
        })
    }

    fn automorphism(&mut self, base: &CorpusEntry) -> Result<AutomorphismMap> {
        let word = self.ident()?;
        match word {
            "inversion" => AutomorphismMap::inversion(&base.group),
            "inner" => {
                self.expect('(')?;
                let text = self.balanced()?;
                let t = Permutation::parse(text.trim(), base.group.degree())?;
                AutomorphismMap::inner(&base.group, &t)
            }
            name => base
                .automorphism(name)
                .cloned()
                .ok_or_else(|| Error::UnknownFamily(format!("automorphism `{name}`"))),
        }
    }
}

/// Builds a builtin such as `symmetric(4)`,
/// `direct_product(cyclic(2),alternating(5))` or
/// `holomorph_ext(alternating(4),inner((1 2 3)))`.
pub fn builtin(spec: &str, element_cap: usize) -> Result<CorpusEntry> {
    let mut parser = SpecParser {
        text: spec,
        pos: 0,
        cap: element_cap,
    };
    let entry = parser.entry()?;
    parser.skip_ws();
    if parser.pos != spec.len() {
        return Err(parser.error("trailing text"));
    }
    Ok(entry)
}

/// Parses a `.grp` file. `source` is recorded as the provenance.
pub fn parse_group_file(text: &str, source: Option<&Path>, element_cap: usize) -> Result<CorpusEntry> {
    let mut name: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut gens: Vec<(usize, String)> = Vec::new();
    // (line, name, [(line, image)])
    type AutoBlock = (usize, String, Vec<(usize, String)>);
    let mut autos: Vec<AutoBlock> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        let syntax = |message: String| Error::FileSyntax { line: line_no, message };
        match key {
            "name" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(syntax("`name` takes one identifier".into()));
                }
                if name.replace(rest.to_string()).is_some() {
                    return Err(syntax("duplicate `name`".into()));
                }
            }
            "degree" => {
                let d: usize = rest
                    .parse()
                    .ok()
                    .filter(|&d| d > 0)
                    .ok_or_else(|| syntax(format!("bad degree `{rest}`")))?;
                if degree.replace(d).is_some() {
                    return Err(syntax("duplicate `degree`".into()));
                }
            }
            "gen" => {
                if !autos.is_empty() {
                    return Err(syntax("`gen` after an `auto` block".into()));
                }
                gens.push((line_no, rest.to_string()));
            }
            "auto" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(syntax("`auto` takes one identifier".into()));
                }
                autos.push((line_no, rest.to_string(), Vec::new()));
            }
            "map" => match autos.last_mut() {
                Some(block) => block.2.push((line_no, rest.to_string())),
                None => return Err(syntax("`map` outside an `auto` block".into())),
            },
            other => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }
    let eof = text.lines().count().max(1);
    let name = name.ok_or(Error::FileSyntax { line: eof, message: "missing `name`".into() })?;
    let degree = degree.ok_or(Error::FileSyntax { line: eof, message: "missing `degree`".into() })?;
    if gens.is_empty() {
        return Err(Error::FileSyntax { line: eof, message: "no `gen` lines".into() });
    }
    let at_line = |line: usize, e: Error| match e {
        Error::Parse { token, message } => Error::FileSyntax {
            line,
            message: format!("`{token}`: {message}"),
        },
        other => other,
    };
    let generators = gens
        .iter()
        .map(|(l, s)| Permutation::parse(s, degree).map_err(|e| at_line(*l, e)))
        .collect::<Result<Vec<_>>>()?;
    let group = close_group(&generators, element_cap)?;
    let mut automorphisms: Vec<NamedAutomorphism> = Vec::new();
    for (line, auto_name, maps) in autos {
        if automorphisms.iter().any(|a| a.name == auto_name) {
            return Err(Error::FileSyntax { line, message: format!("duplicate automorphism `{auto_name}`") });
        }
        if maps.len() != generators.len() {
            return Err(Error::FileSyntax {
                line,
                message: format!(
                    "automorphism `{auto_name}` has {} `map` lines for {} generators",
                    maps.len(),
                    generators.len()
                ),
            });
        }
        let images = maps
            .iter()
            .map(|(l, s)| Permutation::parse(s, degree).map_err(|e| at_line(*l, e)))
            .collect::<Result<Vec<_>>>()?;
        let map = AutomorphismMap::new(&group, images).map_err(|e| match e {
            Error::InvalidAutomorphism(m) => Error::InvalidAutomorphism(format!("`{auto_name}`: {m}")),
            other => other,
        })?;
        automorphisms.push(named(&auto_name, map));
    }
    Ok(CorpusEntry {
        name,
        group,
        automorphisms,
        provenance: match source {
            Some(p) => Provenance::File(p.to_path_buf()),
            None => Provenance::Builtin(String::new()),
        },
    })
}

fn sort_and_check(mut entries: Vec<CorpusEntry>) -> Result<Vec<CorpusEntry>> {
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    if let Some(w) = entries.windows(2).find(|w| w[0].name == w[1].name) {
        return Err(Error::Precondition(format!("duplicate corpus entry `{}`", w[0].name)));
    }
    Ok(entries)
}

/// Every `*.grp` file in a directory, sorted by entry name.
pub fn load_corpus(dir: &Path, element_cap: usize) -> Result<Vec<CorpusEntry>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    let mut entries = Vec::with_capacity(paths.len());
    for p in paths {
        let text = std::fs::read_to_string(&p)?;
        let entry = parse_group_file(&text, Some(&p), element_cap).map_err(|e| match e {
            Error::FileSyntax { line, message } => Error::FileSyntax {
                line,
                message: format!("{}: {message}", p.display()),
            },
            other => other,
        })?;
        entries.push(entry);
    }
    sort_and_check(entries)
}

/// The shipped corpus: builtin families plus the embedded `.grp` files.
pub fn small_std(element_cap: usize) -> Result<Vec<CorpusEntry>> {
    let mut entries = SMALL_STD_BUILTINS
        .iter()
        .map(|s| builtin(s, element_cap))
        .collect::<Result<Vec<_>>>()?;
    for (file, text) in SMALL_STD_FILES {
        let mut e = parse_group_file(text, None, element_cap)?;
        e.provenance = Provenance::File(PathBuf::from(format!("{SMALL_STD}/{file}")));
        entries.push(e);
    }
    sort_and_check(entries)
}

/// Resolves a corpus selector: `builtin:small-std`, `builtin:<spec>[;<spec>…]`,
/// a directory of `.grp` files, or a single `.grp` file.
pub fn select(selector: &str, element_cap: usize) -> Result<Vec<CorpusEntry>> {
    if let Some(rest) = selector.strip_prefix("builtin:") {
        if rest == SMALL_STD {
            return small_std(element_cap);
        }
        let entries = rest
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| builtin(s.trim(), element_cap))
            .collect::<Result<Vec<_>>>()?;
        return sort_and_check(entries);
    }
    let path = Path::new(selector);
    if path.is_dir() {
        load_corpus(path, element_cap)
    } else {
        let text = std::fs::read_to_string(path)?;
        Ok(vec![parse_group_file(&text, Some(path), element_cap)?])
    }
}

/// Short name used in report file names.
pub fn selector_label(selector: &str) -> String {
    let base = selector.strip_prefix("builtin:").unwrap_or(selector);
    let base = Path::new(base)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| base.to_string());
    base.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}
