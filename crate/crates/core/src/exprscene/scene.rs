//! Line-oriented scene files naming curves and surfaces.
//!
//! ```text
//! # comment
//! [curve NAME]          [surface NAME]
//! x = EXPR              x = EXPR
//! y = EXPR              y = EXPR
//! z = EXPR              z = EXPR
//! domain = LO HI        domain_s = LO HI
//!                       domain_t = LO HI
//! ```
//!
//! Curve expressions may use `s` only; surface expressions use `s` and `t`.
//! Names are unique across the whole file and domains must satisfy lo < hi.

use super::expr::{parse_expr, parse_expr_curve, Expr};
use crate::error::{Error, Result};
use crate::interval::Interval;

#[derive(Debug, Clone)]
pub struct SceneCurve {
    pub name: String,
    pub x: Expr,
    pub y: Expr,
    pub z: Expr,
    pub domain: Interval,
}

#[derive(Debug, Clone)]
pub struct SceneSurface {
    pub name: String,
    pub x: Expr,
    pub y: Expr,
    pub z: Expr,
    pub domain_s: Interval,
    pub domain_t: Interval,
}

#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub curves: Vec<SceneCurve>,
    pub surfaces: Vec<SceneSurface>,
}

impl Scene {
    pub fn parse(text: &str) -> Result<Scene> {
        parse_scene(text)
    }

    pub fn curve(&self, name: &str) -> Option<&SceneCurve> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn surface(&self, name: &str) -> Option<&SceneSurface> {
        self.surfaces.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Curve,
    Surface,
}

struct Pending {
    kind: Kind,
    name: String,
    header_offset: usize,
    x: Option<Expr>,
    y: Option<Expr>,
    z: Option<Expr>,
    domain: Option<Interval>,
    domain_s: Option<Interval>,
    domain_t: Option<Interval>,
}

fn parse_domain(name: &str, value: &str, offset: usize) -> Result<Interval> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(Error::Parse {
            offset,
            message: format!("expected `LO HI` after `{name} =`, found `{value}`"),
        });
    }
    let lo: f64 = parts[0].parse().map_err(|_| Error::Parse {
        offset,
        message: format!("invalid number `{}`", parts[0]),
    })?;
    let hi: f64 = parts[1].parse().map_err(|_| Error::Parse {
        offset,
        message: format!("invalid number `{}`", parts[1]),
    })?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::BadDomain { name: name.to_string(), lo, hi });
    }
    Ok(Interval::new(lo, hi))
}

fn parse_entry_expr(kind: Kind, value: &str, value_offset: usize) -> Result<Expr> {
    let parsed = match kind {
        Kind::Curve => parse_expr_curve(value),
        Kind::Surface => parse_expr(value),
    };
    parsed.map_err(|e| match e {
        Error::Parse { offset, message } => Error::Parse { offset: value_offset + offset, message },
        other => other,
    })
}

fn finalize(p: Pending, scene: &mut Scene) -> Result<()> {
    let missing = |key: &str| Error::Parse {
        offset: p.header_offset,
        message: format!("missing `{key}` in [{} {}]", kind_name(p.kind), p.name),
    };
    let x = p.x.clone().ok_or_else(|| missing("x"))?;
    let y = p.y.clone().ok_or_else(|| missing("y"))?;
    let z = p.z.clone().ok_or_else(|| missing("z"))?;
    match p.kind {
        Kind::Curve => {
            let domain = p.domain.ok_or_else(|| missing("domain"))?;
            scene.curves.push(SceneCurve { name: p.name, x, y, z, domain });
        }
        Kind::Surface => {
            let domain_s = p.domain_s.ok_or_else(|| missing("domain_s"))?;
            let domain_t = p.domain_t.ok_or_else(|| missing("domain_t"))?;
            scene.surfaces.push(SceneSurface { name: p.name, x, y, z, domain_s, domain_t });
        }
    }
    Ok(())
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Curve => "curve",
        Kind::Surface => "surface",
    }
}

/// Parses a scene file. Errors carry byte offsets into the original text.
pub fn parse_scene(text: &str) -> Result<Scene> {
    let mut scene = Scene::default();
    let mut names: Vec<String> = Vec::new();
    let mut pending: Option<Pending> = None;
    let mut line_start = 0usize;

    for raw_line in text.split_inclusive('\n') {
        let this_start = line_start;
        line_start += raw_line.len();

        let line = raw_line.trim_end_matches(['\n', '\r']);
        let content = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let trimmed = content.trim();
        let trim_offset = this_start + (content.len() - content.trim_start().len());

        if trimmed.starts_with('[') {
            if !trimmed.ends_with(']') {
                return Err(Error::Parse {
                    offset: trim_offset,
                    message: "section header must look like `[curve NAME]` or `[surface NAME]`".into(),
                });
            }
            let inner = &trimmed[1..trimmed.len() - 1];
            let parts: Vec<&str> = inner.split_whitespace().collect();
            let (kind, name) = match parts.as_slice() {
                ["curve", name] => (Kind::Curve, name.to_string()),
                ["surface", name] => (Kind::Surface, name.to_string()),
                _ => {
                    return Err(Error::Parse {
                        offset: trim_offset,
                        message: format!("bad section header `{trimmed}`"),
                    })
                }
            };
            if names.iter().any(|n| *n == name) {
                return Err(Error::DuplicateName(name));
            }
            names.push(name.clone());
            if let Some(done) = pending.take() {
                finalize(done, &mut scene)?;
            }
            pending = Some(Pending {
                kind,
                name,
                header_offset: trim_offset,
                x: None,
                y: None,
                z: None,
                domain: None,
                domain_s: None,
                domain_t: None,
            });
            continue;
        }

        let eq = trimmed.find('=').ok_or_else(|| Error::Parse {
            offset: trim_offset,
            message: format!("expected `key = value`, found `{trimmed}`"),
        })?;
        let key = trimmed[..eq].trim();
        let value = trimmed[eq + 1..].trim();
        let value_offset = trim_offset + eq + 1 + (trimmed[eq + 1..].len() - trimmed[eq + 1..].trim_start().len());

        let entry = pending.as_mut().ok_or_else(|| Error::Parse {
            offset: trim_offset,
            message: format!("`{key}` outside of any [curve]/[surface] section"),
        })?;

        let dup = |key: &str| Error::Parse {
            offset: trim_offset,
            message: format!("duplicate key `{key}` in [{} {}]", kind_name(entry.kind), entry.name),
        };

        match (entry.kind, key) {
            (_, "x") => {
                if entry.x.is_some() {
                    return Err(dup("x"));
                }
                entry.x = Some(parse_entry_expr(entry.kind, value, value_offset)?);
            }
            (_, "y") => {
                if entry.y.is_some() {
                    return Err(dup("y"));
                }
                entry.y = Some(parse_entry_expr(entry.kind, value, value_offset)?);
            }
            (_, "z") => {
                if entry.z.is_some() {
                    return Err(dup("z"));
                }
                entry.z = Some(parse_entry_expr(entry.kind, value, value_offset)?);
            }
            (Kind::Curve, "domain") => {
                if entry.domain.is_some() {
                    return Err(dup("domain"));
                }
                entry.domain = Some(parse_domain("domain", value, value_offset)?);
            }
            (Kind::Surface, "domain_s") => {
                if entry.domain_s.is_some() {
                    return Err(dup("domain_s"));
                }
                entry.domain_s = Some(parse_domain("domain_s", value, value_offset)?);
            }
            (Kind::Surface, "domain_t") => {
                if entry.domain_t.is_some() {
                    return Err(dup("domain_t"));
                }
                entry.domain_t = Some(parse_domain("domain_t", value, value_offset)?);
            }
            (k, other) => {
                return Err(Error::Parse {
                    offset: trim_offset,
                    message: format!("unknown key `{other}` in a [{}] section", kind_name(k)),
                })
            }
        }
    }

    if let Some(done) = pending.take() {
        finalize(done, &mut scene)?;
    }
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = "\
[surface cyl]
x = s
y = cos(t)
z = sin(t)
domain_s = 0 6.283185307
domain_t = 0 6.283185307
[curve helix]
x = s
y = cos(s)
z = sin(s)
domain = 0 6.283185307
";

    #[test]
    fn demo_scene_parses() {
        let scene = parse_scene(DEMO).unwrap();
        assert_eq!(scene.curves.len(), 1);
        assert_eq!(scene.surfaces.len(), 1);
        assert!(scene.surface("cyl").is_some());
        assert!(scene.curve("helix").is_some());
        assert_eq!(scene.curve("helix").unwrap().domain.lo, 0.0);
    }

    #[test]
    fn duplicate_names_rejected() {
        let text = "[curve a]\nx = s\ny = s\nz = s\ndomain = 0 1\n[curve a]\nx = s\ny = s\nz = s\ndomain = 0 1\n";
        assert!(matches!(parse_scene(text), Err(Error::DuplicateName(n)) if n == "a"));
    }

    #[test]
    fn reversed_domain_rejected() {
        let text = "[surface f]\nx = s\ny = t\nz = s\ndomain_s = 1 0\ndomain_t = 0 1\n";
        assert!(matches!(parse_scene(text), Err(Error::BadDomain { .. })));
    }

    #[test]
    fn t_in_curve_is_parse_error() {
        let text = "[curve c]\nx = s\ny = cos(t)\nz = s\ndomain = 0 1\n";
        assert!(matches!(parse_scene(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn missing_key_reported() {
        let text = "[curve c]\nx = s\ny = s\ndomain = 0 1\n";
        let err = parse_scene(text).unwrap_err();
        assert!(err.to_string().contains("missing `z`"), "{err}");
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# a scene\n\n[curve c] # the curve\nx = s # identity\ny = s\nz = s\ndomain = 0 1\n";
        let scene = parse_scene(text).unwrap();
        assert_eq!(scene.curves.len(), 1);
    }

    #[test]
    fn expr_error_offset_is_file_relative() {
        let text = "[curve c]\nx = 2+*3\ny = s\nz = s\ndomain = 0 1\n";
        match parse_scene(text).unwrap_err() {
            Error::Parse { offset, .. } => {
                // the bad `*` sits at byte 16 of the file
                assert_eq!(&text.as_bytes()[offset..offset + 1], b"*");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
