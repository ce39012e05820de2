//! The color-emotion palette: named reference colors, each carrying a list of
//! emotion words, plus nearest-color lookup in CIELAB.
//!
//! File format, one record per line:
//!
//! ```text
//! # comment
//! Dark Brick Red ; 128,38,28 ; earthy, friendly, robust, strong, tasty, warm
//! ```
//!
//! Whitespace around separators is ignored and words are lowercased on load.

use std::collections::{BTreeSet, HashSet};
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::color::{delta_e, srgb_to_lab, LabColor, PixelColor};
use crate::error::{Error, Result};

const STANDIN: &str = include_str!("../palettes/standin.palette");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaletteEntry {
    pub name: String,
    pub color: PixelColor,
    pub lab: LabColor,
    pub words: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Palette {
    entries: Vec<PaletteEntry>,
    vocabulary: BTreeSet<String>,
    id: String,
}

impl Palette {
    /// Build a palette from `(name, color, words)` triples, applying the same
    /// validation as [`load_palette`].
    pub fn new<I, S, W>(records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, PixelColor, Vec<W>)>,
        S: Into<String>,
        W: AsRef<str>,
    {
        let mut text = String::new();
        for (name, c, words) in records {
            let words: Vec<&str> = words.iter().map(|w| w.as_ref()).collect();
            text.push_str(&format!("{} ; {},{},{} ; {}\n", name.into(), c.r, c.g, c.b, words.join(", ")));
        }
        parse_palette(&text)
    }

    /// The synthetic 108-color palette shipped with the crate.
    pub fn standin() -> Self {
        parse_palette(STANDIN).expect("bundled palette is valid")
    }

    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        load_palette(file)
    }

    pub fn entries(&self) -> &[PaletteEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn vocabulary(&self) -> &BTreeSet<String> {
        &self.vocabulary
    }

    /// Hex SHA-256 of the palette source text.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    pub fn nearest_entry(&self, c: LabColor) -> usize {
        nearest_entry(c, self)
    }

    pub fn words_for(&self, index: usize) -> Result<&[String]> {
        words_for(self, index)
    }
}

/// Read and validate a palette file.
pub fn load_palette<R: Read>(mut source: R) -> Result<Palette> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| Error::PaletteParse { line: 0, message: e.to_string() })?;
    parse_palette(&text)
}

pub fn parse_palette(text: &str) -> Result<Palette> {
    let mut entries = Vec::new();
    let mut names = HashSet::new();
    let mut colors = HashSet::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::PaletteParse { line: line_no, message };

        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(err(format!("expected `name ; R,G,B ; words`, found {} field(s)", fields.len())));
        }
        let name = fields[0];
        if name.is_empty() {
            return Err(err("empty color name".into()));
        }

        let channels: Vec<&str> = fields[1].split(',').map(str::trim).collect();
        if channels.len() != 3 {
            return Err(err(format!("expected three channels, found `{}`", fields[1])));
        }
        let mut rgb = [0u8; 3];
        for (slot, ch) in rgb.iter_mut().zip(&channels) {
            *slot = ch
                .parse::<u8>()
                .map_err(|_| err(format!("channel `{ch}` is not an integer in 0..=255")))?;
        }
        let color = PixelColor::from(rgb);

        let mut words: Vec<String> = Vec::new();
        for w in fields[2].split(',').map(str::trim).filter(|w| !w.is_empty()) {
            let w = w.to_lowercase();
            if words.contains(&w) {
                return Err(Error::PaletteValidation(format!("line {line_no}: `{name}` lists `{w}` twice")));
            }
            words.push(w);
        }
        if words.is_empty() {
            return Err(Error::PaletteValidation(format!("line {line_no}: `{name}` has no words")));
        }
        if !names.insert(name.to_string()) {
            return Err(Error::PaletteValidation(format!("line {line_no}: duplicate color name `{name}`")));
        }
        if !colors.insert(color) {
            return Err(Error::PaletteValidation(format!("line {line_no}: duplicate color {color} (`{name}`)")));
        }

        entries.push(PaletteEntry { name: name.to_string(), color, lab: srgb_to_lab(color), words });
    }

    if entries.is_empty() {
        return Err(Error::PaletteValidation("palette has no entries".into()));
    }
    let vocabulary = entries.iter().flat_map(|e| e.words.iter().cloned()).collect();
    let id = hex::encode(Sha256::digest(text.as_bytes()));
    Ok(Palette { entries, vocabulary, id })
}

/// Index of the entry closest to `c` in CIE76 distance. Ties go to the lowest index.
pub fn nearest_entry(c: LabColor, p: &Palette) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, e) in p.entries.iter().enumerate() {
        let d = delta_e(c, e.lab);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

pub fn words_for(p: &Palette, index: usize) -> Result<&[String]> {
    p.entries
        .get(index)
        .map(|e| e.words.as_slice())
        .ok_or(Error::EntryOutOfRange { index, len: p.entries.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TABLE_ROWS: &str = "\
# four rows
Dark Brick Red ; 128,38,28 ; earthy, friendly, robust, strong, tasty, warm
Salmon Red ; 250,128,114 ; healthy, happy, tasty, friendly, cosmetic, warm
Deep Plum Red ; 110,36,60 ; elegant, majestic, spiritual, fruity, feminine
Medium Burgundy Purple ; 128,40,90 ; vibrant, spiritual, passionate, floral, fruity
";

    #[test]
    fn loads_table_rows() {
        let p = load_palette(TABLE_ROWS.as_bytes()).unwrap();
        assert_eq!(p.len(), 4);
        // 22 listed words, of which tasty/friendly/warm/spiritual/fruity repeat.
        assert_eq!(p.vocabulary().len(), 17);
        let dbr = p.position("Dark Brick Red").unwrap();
        assert_eq!(p.words_for(dbr).unwrap(), ["earthy", "friendly", "robust", "strong", "tasty", "warm"]);
        let plum = p.position("Deep Plum Red").unwrap();
        assert_eq!(p.words_for(plum).unwrap(), ["elegant", "majestic", "spiritual", "fruity", "feminine"]);
    }

    #[test]
    fn duplicate_name_is_rejected() {
        let text = "Salmon Red ; 250,128,114 ; happy\nSalmon Red ; 1,2,3 ; warm\n";
        assert!(matches!(parse_palette(text), Err(Error::PaletteValidation(_))));
    }

    #[test]
    fn duplicate_rgb_is_rejected() {
        let text = "A ; 1,2,3 ; happy\nB ; 1,2,3 ; warm\n";
        assert!(matches!(parse_palette(text), Err(Error::PaletteValidation(_))));
    }

    #[test]
    fn empty_file_is_rejected() {
        assert!(matches!(parse_palette(""), Err(Error::PaletteValidation(_))));
        assert!(matches!(parse_palette("# only comments\n\n"), Err(Error::PaletteValidation(_))));
    }

    #[test]
    fn entry_without_words_is_rejected() {
        assert!(matches!(parse_palette("A ; 1,2,3 ;  \n"), Err(Error::PaletteValidation(_))));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "A ; 1,2,3 ; warm\n\n# c\nB ; 1,2 ; cool\n";
        match parse_palette(text) {
            Err(Error::PaletteParse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        match parse_palette("A ; 1,2,300 ; warm") {
            Err(Error::PaletteParse { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_palette("A ; 1,2,3") {
            Err(Error::PaletteParse { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn whitespace_and_case_are_normalized() {
        let p = parse_palette("  Mint   ;  10 , 20 ,30 ;  Cool ,FRESH,  calm  \n").unwrap();
        assert_eq!(p.entries()[0].name, "Mint");
        assert_eq!(p.entries()[0].color, PixelColor::new(10, 20, 30));
        assert_eq!(p.words_for(0).unwrap(), ["cool", "fresh", "calm"]);
    }

    #[test]
    fn words_for_out_of_range() {
        let p = parse_palette("A ; 1,2,3 ; warm\n").unwrap();
        assert_eq!(p.words_for(0).unwrap(), ["warm"]);
        assert!(matches!(p.words_for(1), Err(Error::EntryOutOfRange { index: 1, len: 1 })));
    }

    #[test]
    fn single_entry_always_wins() {
        let p = parse_palette("A ; 1,2,3 ; warm\n").unwrap();
        assert_eq!(p.nearest_entry(LabColor::new(99.0, -50.0, 70.0)), 0);
    }

    #[test]
    fn exact_match_wins() {
        let p = Palette::standin();
        assert_eq!(p.nearest_entry(p.entries()[3].lab), 3);
        for (i, e) in p.entries().iter().enumerate() {
            assert_eq!(p.nearest_entry(e.lab), i);
        }
    }

    // Search ULP perturbations of the midpoint until both distances agree
    // bit-for-bit, then check the lower index wins.
    #[test]
    fn ties_go_to_lowest_index() {
        let text = "\
E0 ; 0,0,0 ; a
E1 ; 200,40,40 ; b
E2 ; 255,255,255 ; c
E3 ; 0,0,255 ; d
E4 ; 220,80,60 ; e
";
        let p = parse_palette(text).unwrap();
        let (l1, l4) = (p.entries()[1].lab, p.entries()[4].lab);
        let mid = LabColor::new((l1.l + l4.l) / 2.0, (l1.a + l4.a) / 2.0, (l1.b + l4.b) / 2.0);
        let nudge = |x: f64, k: i64| f64::from_bits((x.to_bits() as i64 + k) as u64);
        let mut found = None;
        'search: for dl in -8..=8 {
            for da in -8..=8 {
                for db in -8..=8 {
                    let c = LabColor::new(nudge(mid.l, dl), nudge(mid.a, da), nudge(mid.b, db));
                    if delta_e(c, l1) == delta_e(c, l4) {
                        found = Some(c);
                        break 'search;
                    }
                }
            }
        }
        let c = found.expect("an exactly equidistant point near the midpoint");
        let d = delta_e(c, l1);
        for (i, e) in p.entries().iter().enumerate() {
            if i != 1 && i != 4 {
                assert!(delta_e(c, e.lab) > d);
            }
        }
        assert_eq!(p.nearest_entry(c), 1);
    }

    #[test]
    fn standin_palette_shape() {
        let p = Palette::standin();
        assert_eq!(p.len(), 108);
        assert_eq!(p.vocabulary().len(), 187);
        for (i, e) in p.entries().iter().enumerate() {
            assert!((e.lab.delta_e(&srgb_to_lab(e.color))) < 1e-6);
            for w in p.words_for(i).unwrap() {
                assert!(p.vocabulary().contains(w));
            }
        }
        let union: BTreeSet<String> = p.entries().iter().flat_map(|e| e.words.clone()).collect();
        assert_eq!(&union, p.vocabulary());
    }

    #[test]
    fn id_depends_on_content() {
        let a = parse_palette("A ; 1,2,3 ; warm\n").unwrap();
        let b = parse_palette("A ; 1,2,3 ; cool\n").unwrap();
        assert_eq!(a.id().len(), 64);
        assert_ne!(a.id(), b.id());
    }
}
