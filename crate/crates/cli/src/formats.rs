//! Text and CSV formats read and written by the command-line tool.
//!
//! * Tree text: the node count on the first line, then one line of parent
//!   ids with `-1` marking the root.
//! * Label table CSV: `node_id,label_hex,scheme,family_size`.
//! * Interval dump CSV: `node_id,i,a,b,lo,hi`.
//! * Pairs: one `u v` pair per line; answers are `u v 0|1`.
//! * Report CSV: `tree,check,status,detail`.

use std::io::{BufRead, Read, Write};

use ancestry_core::{
    ClassicLabel, ClassicLabeling, CodecError, IntervalAssignment, Label, LabelLayout, NodeId,
    OffsetWidth, ParamsError, RootedTree, SchemeParams, TreeError, VerificationReport,
};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("tree text is empty")]
    Empty,
    #[error("line {line}, field {field}: {token:?} is not an integer")]
    BadInteger {
        line: usize,
        field: usize,
        token: String,
    },
    #[error("node count is {declared} but {found} parent ids follow")]
    CountMismatch { declared: usize, found: usize },
    #[error("line {line}: unexpected content after the parent ids")]
    TrailingContent { line: usize },
    #[error("invalid tree: {0}")]
    Tree(#[from] TreeError),
    #[error("label table row {row}: {message}")]
    LabelRow { row: usize, message: String },
    #[error("label table has no rows")]
    NoLabels,
    #[error("pairs line {line}: {message}")]
    PairLine { line: usize, message: String },
    #[error("unknown scheme {0:?} (expected optimal, optimal-tight or classic)")]
    UnknownScheme(String),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_int(token: &str, line: usize, field: usize) -> Result<i64, FormatError> {
    token.parse().map_err(|_| FormatError::BadInteger {
        line,
        field,
        token: token.to_string(),
    })
}

/// Parses the tree text format. Line and field positions in errors are
/// 1-based.
pub fn parse_tree(text: &str) -> Result<RootedTree, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (count_line, first) = lines.next().ok_or(FormatError::Empty)?;
    let mut head = first.split_whitespace();
    let declared = parse_int(head.next().unwrap_or(""), count_line + 1, 1)?;
    if head.next().is_some() {
        return Err(FormatError::TrailingContent {
            line: count_line + 1,
        });
    }
    let declared = usize::try_from(declared).map_err(|_| FormatError::BadInteger {
        line: count_line + 1,
        field: 1,
        token: declared.to_string(),
    })?;
    let mut parents = Vec::with_capacity(declared);
    if let Some((idx, line)) = lines.next() {
        for (f, token) in line.split_whitespace().enumerate() {
            parents.push(parse_int(token, idx + 1, f + 1)?);
        }
    }
    if let Some((idx, _)) = lines.next() {
        return Err(FormatError::TrailingContent { line: idx + 1 });
    }
    if parents.len() != declared {
        return Err(FormatError::CountMismatch {
            declared,
            found: parents.len(),
        });
    }
    Ok(RootedTree::from_signed_parents(&parents)?)
}

pub fn read_tree(mut input: impl Read) -> Result<RootedTree, FormatError> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    parse_tree(&text)
}

pub fn write_tree(mut out: impl Write, tree: &RootedTree) -> std::io::Result<()> {
    writeln!(out, "{}", tree.node_count())?;
    let parents: Vec<String> = tree.signed_parents().iter().map(i64::to_string).collect();
    writeln!(out, "{}", parents.join(" "))
}

pub fn tree_to_string(tree: &RootedTree) -> String {
    let mut buf = Vec::new();
    write_tree(&mut buf, tree).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("tree text is ASCII")
}

/// A label table as stored on disk: enough to answer queries without the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelTable {
    Optimal {
        layout: LabelLayout,
        labels: Vec<Label>,
    },
    Classic(ClassicLabeling),
}

impl LabelTable {
    pub fn scheme_name(&self) -> &'static str {
        match self {
            LabelTable::Optimal { layout, .. } => match layout.offset_width() {
                OffsetWidth::Wide => "optimal",
                OffsetWidth::Tight => "optimal-tight",
            },
            LabelTable::Classic(_) => "classic",
        }
    }

    pub fn family_size(&self) -> u64 {
        match self {
            LabelTable::Optimal { layout, .. } => layout.params().family_size(),
            LabelTable::Classic(c) => c.family_size,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            LabelTable::Optimal { labels, .. } => labels.len(),
            LabelTable::Classic(c) => c.labels.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total_bits(&self) -> u32 {
        match self {
            LabelTable::Optimal { layout, .. } => layout.total_bits(),
            LabelTable::Classic(c) => c.total_bits(),
        }
    }

    pub fn decide(&self, u: NodeId, v: NodeId) -> bool {
        match self {
            LabelTable::Optimal { layout, labels } => {
                ancestry_core::decide_ancestry(layout, labels[u], labels[v])
            }
            LabelTable::Classic(c) => c.decide(u, v),
        }
    }

    fn hex(&self, v: NodeId) -> String {
        match self {
            LabelTable::Optimal { layout, labels } => labels[v].to_hex(layout),
            LabelTable::Classic(c) => format!(
                "{:0width$x}",
                c.labels[v].to_bits(c.field_bits()),
                width = c.hex_digits()
            ),
        }
    }
}

pub fn write_label_table(out: impl Write, table: &LabelTable) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node_id", "label_hex", "scheme", "family_size"])?;
    let scheme = table.scheme_name();
    let n = table.family_size().to_string();
    for v in 0..table.len() {
        w.write_record([v.to_string().as_str(), &table.hex(v), scheme, &n])?;
    }
    w.flush()?;
    Ok(())
}

fn row_error(row: usize, message: impl Into<String>) -> FormatError {
    FormatError::LabelRow {
        row,
        message: message.into(),
    }
}

/// Reads a label table. Rows may come in any order but node ids must cover
/// `0..rows` exactly once, and every row must name the same scheme and family
/// size.
pub fn read_label_table(input: impl Read) -> Result<LabelTable, FormatError> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = r.headers()?.clone();
    let expected = ["node_id", "label_hex", "scheme", "family_size"];
    if headers.iter().ne(expected) {
        return Err(row_error(
            0,
            format!("header must be {}", expected.join(",")),
        ));
    }
    let mut rows: Vec<(usize, String)> = Vec::new();
    let mut kind: Option<(String, u64)> = None;
    for (idx, rec) in r.records().enumerate() {
        let row = idx + 1;
        let rec = rec?;
        let node: usize = rec[0].parse().map_err(|_| {
            row_error(
                row,
                format!("node id {:?} is not a non-negative integer", &rec[0]),
            )
        })?;
        let n: u64 = rec[3]
            .parse()
            .map_err(|_| row_error(row, format!("family size {:?} is not an integer", &rec[3])))?;
        let this = (rec[2].to_string(), n);
        match &kind {
            None => kind = Some(this),
            Some(k) if *k != this => {
                return Err(row_error(
                    row,
                    format!("scheme/family size {this:?} differs from {k:?}"),
                ))
            }
            Some(_) => {}
        }
        rows.push((node, rec[1].to_string()));
    }
    let (scheme, n) = kind.ok_or(FormatError::NoLabels)?;
    let count = rows.len();
    let mut ordered: Vec<Option<String>> = vec![None; count];
    for (row, (node, hex)) in rows.into_iter().enumerate() {
        let slot = ordered.get_mut(node).ok_or_else(|| {
            row_error(
                row + 1,
                format!("node id {node} is out of range for {count} rows"),
            )
        })?;
        if slot.is_some() {
            return Err(row_error(row + 1, format!("node id {node} appears twice")));
        }
        *slot = Some(hex);
    }
    let hexes = ordered.into_iter().map(|h| h.expect("ids cover 0..count"));
    match scheme.as_str() {
        "optimal" | "optimal-tight" => {
            let width = if scheme == "optimal" {
                OffsetWidth::Wide
            } else {
                OffsetWidth::Tight
            };
            let layout = LabelLayout::with_offset_width(SchemeParams::for_family_size(n)?, width);
            let labels = hexes
                .enumerate()
                .map(|(v, h)| {
                    Label::from_hex(&layout, &h)
                        .map_err(|e: CodecError| row_error(v + 1, e.to_string()))
                })
                .collect::<Result<_, _>>()?;
            Ok(LabelTable::Optimal { layout, labels })
        }
        "classic" => {
            if n == 0 {
                return Err(row_error(1, "family size must be positive"));
            }
            let mut c = ClassicLabeling {
                family_size: n,
                labels: Vec::with_capacity(count),
            };
            let field = c.field_bits();
            for (v, h) in hexes.enumerate() {
                let bits = u128::from_str_radix(&h, 16)
                    .ok()
                    .filter(|b| *b >> (2 * field) == 0)
                    .ok_or_else(|| {
                        row_error(v + 1, format!("{h:?} is not a {}-bit hex label", 2 * field))
                    })?;
                c.labels.push(ClassicLabel::from_bits(bits, field));
            }
            Ok(LabelTable::Classic(c))
        }
        other => Err(FormatError::UnknownScheme(other.to_string())),
    }
}

pub fn write_intervals(
    out: impl Write,
    assignment: &IntervalAssignment,
) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node_id", "i", "a", "b", "lo", "hi"])?;
    for (v, iv) in assignment.intervals.iter().enumerate() {
        let e = iv.interval();
        w.serialize((v, iv.i, iv.a, iv.b, e.lo, e.hi))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads whitespace-separated `u v` pairs, one per line. Blank lines and
/// lines starting with `#` are skipped.
pub fn read_pairs(input: impl BufRead) -> Result<Vec<(NodeId, NodeId)>, FormatError> {
    let mut pairs = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let bad = |message: String| FormatError::PairLine {
            line: idx + 1,
            message,
        };
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(bad(format!(
                "expected two node ids, found {}",
                fields.len()
            )));
        }
        let id = |s: &str| {
            s.parse::<NodeId>()
                .map_err(|_| bad(format!("{s:?} is not a node id")))
        };
        pairs.push((id(fields[0])?, id(fields[1])?));
    }
    Ok(pairs)
}

pub fn write_answers(
    mut out: impl Write,
    answers: &[((NodeId, NodeId), bool)],
) -> std::io::Result<()> {
    for ((u, v), yes) in answers {
        writeln!(out, "{u} {v} {}", u8::from(*yes))?;
    }
    Ok(())
}

pub fn write_report_csv<'a>(
    out: impl Write,
    reports: impl IntoIterator<Item = &'a VerificationReport>,
) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["tree", "check", "status", "detail"])?;
    for r in reports {
        for c in &r.checks {
            let mut detail = c.detail.clone();
            if !c.witnesses.is_empty() {
                detail.push_str(&format!("; witnesses {:?}", c.witnesses));
            }
            w.write_record([
                r.tree_id.as_str(),
                c.name,
                if c.passed { "pass" } else { "fail" },
                &detail,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ancestry_core::{classic_mark, mark};

    const E5: &str = "5\n-1 0 0 1 1";

    #[test]
    fn tree_text_round_trips() {
        let t = parse_tree(E5).unwrap();
        assert_eq!(t.signed_parents(), vec![-1, 0, 0, 1, 1]);
        assert_eq!(tree_to_string(&t), "5\n-1 0 0 1 1\n");
        assert_eq!(parse_tree("5\n-1 0 0 1 1\n").unwrap(), t);
        assert_eq!(
            parse_tree("3\r\n-1 0 1\r\n").unwrap().signed_parents(),
            vec![-1, 0, 1]
        );
    }

    #[test]
    fn tree_text_errors() {
        assert!(matches!(parse_tree(""), Err(FormatError::Empty)));
        assert!(matches!(
            parse_tree("3\n-1 x 1"),
            Err(FormatError::BadInteger {
                line: 2,
                field: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_tree("4\n-1 0 1"),
            Err(FormatError::CountMismatch {
                declared: 4,
                found: 3
            })
        ));
        assert!(matches!(
            parse_tree("2\n-1 -1"),
            Err(FormatError::Tree(TreeError::MultipleRoots { .. }))
        ));
        assert!(matches!(
            parse_tree("3\n-1 2 1"),
            Err(FormatError::Tree(TreeError::Cycle { node: 1 }))
        ));
        assert!(matches!(
            parse_tree("2\n-1 5"),
            Err(FormatError::Tree(TreeError::ParentOutOfRange { .. }))
        ));
        assert!(matches!(
            parse_tree("2\n-1 0\n7"),
            Err(FormatError::TrailingContent { line: 3 })
        ));
        assert!(matches!(
            parse_tree("-2\n"),
            Err(FormatError::BadInteger { .. })
        ));
    }

    fn round_trip(table: &LabelTable) -> LabelTable {
        let mut buf = Vec::new();
        write_label_table(&mut buf, table).unwrap();
        read_label_table(buf.as_slice()).unwrap()
    }

    #[test]
    fn label_tables_round_trip() {
        let t = parse_tree(E5).unwrap();
        let lab = mark(&t, &SchemeParams::for_family_size(8).unwrap()).unwrap();
        let table = LabelTable::Optimal {
            layout: lab.layout,
            labels: lab.labels.clone(),
        };
        assert_eq!(round_trip(&table), table);
        let classic = LabelTable::Classic(classic_mark(&t, 8).unwrap());
        assert_eq!(round_trip(&classic), classic);

        let mut buf = Vec::new();
        write_label_table(&mut buf, &classic).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next(),
            Some("node_id,label_hex,scheme,family_size")
        );
        // [0, 4] with 3-bit fields: 0 | 4 << 3
        assert_eq!(text.lines().nth(1), Some("0,0020,classic,8"));
    }

    #[test]
    fn label_table_errors() {
        let bad = |s: &str| read_label_table(s.as_bytes()).unwrap_err();
        assert!(matches!(
            bad("node_id,label_hex,scheme,family_size\n"),
            FormatError::NoLabels
        ));
        assert!(matches!(
            bad("a,b\n0,1\n"),
            FormatError::LabelRow { row: 0, .. }
        ));
        assert!(matches!(
            bad("node_id,label_hex,scheme,family_size\n0,00,classic,8\n0,00,classic,8\n"),
            FormatError::LabelRow { row: 2, .. }
        ));
        assert!(matches!(
            bad("node_id,label_hex,scheme,family_size\n0,zz,optimal,8\n"),
            FormatError::LabelRow { row: 1, .. }
        ));
        assert!(matches!(
            bad("node_id,label_hex,scheme,family_size\n0,00,fancy,8\n"),
            FormatError::UnknownScheme(_)
        ));
        assert!(matches!(
            bad("node_id,label_hex,scheme,family_size\n0,00,classic,8\n1,00,classic,16\n"),
            FormatError::LabelRow { row: 2, .. }
        ));
    }

    #[test]
    fn pairs_and_answers() {
        let pairs = read_pairs("0 3\n# comment\n\n3 0\n".as_bytes()).unwrap();
        assert_eq!(pairs, vec![(0, 3), (3, 0)]);
        assert!(matches!(
            read_pairs("0 1 2\n".as_bytes()),
            Err(FormatError::PairLine { line: 1, .. })
        ));
        let mut out = Vec::new();
        write_answers(&mut out, &[((0, 3), true), ((3, 0), false)]).unwrap();
        assert_eq!(out, b"0 3 1\n3 0 0\n");
    }
}
