//! The bundled origami catalog (one text file, shared with the tests).

use origami_core::Origami;

/// A named surface shipped with the repository.
pub struct CatalogEntry {
    pub name: String,
    pub text: String,
    pub note: String,
}

pub const CATALOG_TEXT: &str = include_str!("../../../catalog.txt");

pub fn entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for line in CATALOG_TEXT.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.splitn(3, '|');
        let name = parts.next().unwrap_or("").trim().to_string();
        let text = parts.next().unwrap_or("").trim().to_string();
        let note = parts.next().unwrap_or("").trim().to_string();
        if !name.is_empty() && !text.is_empty() {
            out.push(CatalogEntry { name, text, note });
        }
    }
    out
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}

/// Resolves an origami argument: `@name` from the catalog, an existing file
/// path, or inline `h=...; v=...` text.
pub fn resolve(arg: &str) -> Result<Origami, origami_core::Error> {
    if let Some(name) = arg.strip_prefix('@') {
        let entry = lookup(name).ok_or_else(|| {
            origami_core::Error::Syntax(format!("unknown catalog entry \"@{name}\""))
        })?;
        return Origami::parse(&entry.text);
    }
    if !arg.contains('=') {
        if let Ok(contents) = std::fs::read_to_string(arg) {
            return Origami::parse(contents.trim());
        }
    }
    Origami::parse(arg)
}
