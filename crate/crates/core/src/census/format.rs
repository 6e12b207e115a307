use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::triangulation::{Triangulation, ValidationError};

/// A closed surface by orientability and Euler genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Surface {
    pub orientable: bool,
    pub euler_genus: usize,
}

impl Surface {
    pub const SPHERE: Surface = Surface {
        orientable: true,
        euler_genus: 0,
    };

    pub fn orientable(h: usize) -> Self {
        Surface {
            orientable: true,
            euler_genus: 2 * h,
        }
    }

    pub fn nonorientable(k: usize) -> Self {
        Surface {
            orientable: false,
            euler_genus: k,
        }
    }

    pub fn euler_characteristic(self) -> i64 {
        2 - self.euler_genus as i64
    }

    pub fn of(t: &Triangulation) -> Self {
        Surface {
            orientable: t.is_orientable(),
            euler_genus: t.euler_genus(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown surface `{0}` (expected sphere, torus, S<h> or N<k>)")]
pub struct SurfaceParseError(pub String);

impl FromStr for Surface {
    type Err = SurfaceParseError;

    /// `sphere`, `torus`, `projective`, `klein`, `S<h>` or `N<k>` with `k >= 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SurfaceParseError(s.to_string());
        match s.to_ascii_lowercase().as_str() {
            "sphere" => return Ok(Surface::SPHERE),
            "torus" => return Ok(Surface::orientable(1)),
            "projective" | "projective-plane" => return Ok(Surface::nonorientable(1)),
            "klein" | "klein-bottle" => return Ok(Surface::nonorientable(2)),
            _ => {}
        }
        let (kind, num) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: usize = num.parse().map_err(|_| err())?;
        match kind {
            "S" | "s" => Ok(Surface::orientable(n)),
            "N" | "n" if n >= 1 => Ok(Surface::nonorientable(n)),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orientable {
            write!(f, "S{}", self.euler_genus / 2)
        } else {
            write!(f, "N{}", self.euler_genus)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("entry {index}: {source}")]
    Invalid {
        index: usize,
        #[source]
        source: ValidationError,
    },
    #[error("entry {index}: lies on {found}, header declares {declared}")]
    WrongSurface {
        index: usize,
        declared: Surface,
        found: Surface,
    },
}

/// A list of triangulations of one surface. Entries are face lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusFile {
    pub surface: Surface,
    pub entries: Vec<Vec<[usize; 3]>>,
}

impl CensusFile {
    pub fn new(surface: Surface) -> Self {
        CensusFile {
            surface,
            entries: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Validates every entry against the header surface.
    pub fn triangulations(&self) -> Result<Vec<Triangulation>, CensusError> {
        self.entries
            .iter()
            .enumerate()
            .map(|(index, faces)| {
                let t = Triangulation::from_faces(faces).map_err(|source| CensusError::Invalid { index, source })?;
                let found = Surface::of(&t);
                if found != self.surface {
                    return Err(CensusError::WrongSurface {
                        index,
                        declared: self.surface,
                        found,
                    });
                }
                Ok(t)
            })
            .collect()
    }
}

/// Sorted triples, sorted lexicographically.
pub fn normalize_faces(faces: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let mut out: Vec<[usize; 3]> = faces
        .iter()
        .map(|t| {
            let mut t = *t;
            t.sort_unstable();
            t
        })
        .collect();
    out.sort_unstable();
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> CensusError {
    CensusError::Parse { line, msg: msg.into() }
}

/// Parses the text format without validating entries.
pub fn parse_census_text(text: &str) -> Result<CensusFile, CensusError> {
    let mut surface = None;
    let mut entries: Vec<Vec<[usize; 3]>> = Vec::new();
    let mut current: Vec<[usize; 3]> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            // a comment-only line does not end an entry
            if raw.trim().is_empty() && !current.is_empty() {
                entries.push(std::mem::take(&mut current));
            }
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        if words[0] == "surface" {
            if surface.is_some() {
                return Err(parse_err(line_no, "repeated header"));
            }
            surface = Some(parse_header(line_no, &words)?);
            continue;
        }
        if surface.is_none() {
            return Err(parse_err(line_no, "face before the `surface` header"));
        }
        if words.len() != 3 {
            return Err(parse_err(line_no, format!("expected three vertex ids, got `{line}`")));
        }
        let mut tri = [0usize; 3];
        for (slot, w) in tri.iter_mut().zip(&words) {
            *slot = w
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad vertex id `{w}`")))?;
        }
        current.push(tri);
    }
    if !current.is_empty() {
        entries.push(current);
    }
    let surface = surface.ok_or_else(|| parse_err(text.lines().count().max(1), "missing `surface` header"))?;
    Ok(CensusFile { surface, entries })
}

fn parse_header(line: usize, words: &[&str]) -> Result<Surface, CensusError> {
    let bad = || parse_err(line, "header must read `surface <o|n> eg <g>`");
    if words.len() != 4 || words[2] != "eg" {
        return Err(bad());
    }
    let euler_genus: usize = words[3].parse().map_err(|_| bad())?;
    let orientable = match words[1] {
        "o" => true,
        "n" => false,
        _ => return Err(bad()),
    };
    if orientable && euler_genus % 2 == 1 {
        return Err(parse_err(line, "orientable surfaces have even Euler genus"));
    }
    if !orientable && euler_genus == 0 {
        return Err(parse_err(line, "nonorientable surfaces have Euler genus at least 1"));
    }
    Ok(Surface {
        orientable,
        euler_genus,
    })
}

/// Parses and validates every entry.
pub fn parse_census(text: &str) -> Result<CensusFile, CensusError> {
    let file = parse_census_text(text)?;
    file.triangulations()?;
    Ok(file)
}

/// Normalised text: header, entry count comment, then one block per entry
/// with sorted faces.
pub fn write_census(file: &CensusFile) -> String {
    let mut out = format!(
        "surface {} eg {}\n# entries: {}\n",
        if file.surface.orientable { "o" } else { "n" },
        file.surface.euler_genus,
        file.entries.len()
    );
    for faces in &file.entries {
        out.push('\n');
        for [a, b, c] in normalize_faces(faces) {
            out.push_str(&format!("{a} {b} {c}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn single(surface: &str, faces: &[[usize; 3]]) -> String {
        let mut s = format!("surface {surface}\n\n");
        for [a, b, c] in faces {
            s.push_str(&format!("{a} {b} {c}\n"));
        }
        s
    }

    #[test]
    fn k4_parses() {
        let f = parse_census(&single("o eg 0", &catalog::tetrahedron_faces())).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.surface, Surface::SPHERE);
    }

    #[test]
    fn k6_projective_parses() {
        let f = parse_census(&single("n eg 1", &catalog::k6_projective_faces())).unwrap();
        assert_eq!(f.entries[0].len(), 10);
        let t = &f.triangulations().unwrap()[0];
        assert_eq!(t.euler_genus(), 1);
        assert!(!t.is_orientable());
    }

    #[test]
    fn three_faces_on_an_edge_names_the_entry() {
        let mut text = single("o eg 0", &catalog::tetrahedron_faces());
        text.push_str("\n0 1 2\n0 1 3\n0 1 4\n0 2 3\n");
        let err = parse_census(&text).unwrap_err();
        assert!(matches!(err, CensusError::Invalid { index: 1, .. }), "{err}");
    }

    #[test]
    fn wrong_surface_is_reported() {
        let err = parse_census(&single("o eg 2", &catalog::tetrahedron_faces())).unwrap_err();
        assert!(matches!(err, CensusError::WrongSurface { index: 0, .. }));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_census_text("# c\nsurface o eg 0\n\n0 1\n").unwrap_err();
        assert_eq!(
            err,
            CensusError::Parse {
                line: 4,
                msg: "expected three vertex ids, got `0 1`".into()
            }
        );
        assert!(matches!(parse_census_text("0 1 2\n"), Err(CensusError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_census_text("surface x eg 0\n"),
            Err(CensusError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_census_text("surface o eg 1\n"),
            Err(CensusError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn normalized_text_round_trips() {
        let mut f = CensusFile::new(Surface::nonorientable(1));
        f.entries.push(catalog::k6_projective_faces());
        f.entries.push(catalog::k7_minus_k3_faces());
        let text = write_census(&f);
        let again = write_census(&parse_census(&text).unwrap());
        assert_eq!(text, again);
        assert!(text.starts_with("surface n eg 1\n# entries: 2\n\n"));
    }

    #[test]
    fn surface_names() {
        assert_eq!("sphere".parse::<Surface>().unwrap(), Surface::SPHERE);
        assert_eq!("torus".parse::<Surface>().unwrap(), Surface::orientable(1));
        assert_eq!("S2".parse::<Surface>().unwrap().euler_genus, 4);
        assert_eq!("N1".parse::<Surface>().unwrap(), Surface::nonorientable(1));
        assert!("N0".parse::<Surface>().is_err());
        assert!("X3".parse::<Surface>().is_err());
        assert_eq!(Surface::nonorientable(2).to_string(), "N2");
        assert_eq!(Surface::orientable(1).to_string(), "S1");
    }
}
