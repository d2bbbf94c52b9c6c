//! TSV interchange for associative arrays: a header row of column keys,
//! one row per row key, absent cells left as empty fields.

use darkscope_core::assoc::AssocArray;

use crate::error::CliError;

fn field_ok(s: &str) -> bool {
    !s.contains('\t') && !s.contains('\n') && !s.contains('\r')
}

pub fn assoc_to_tsv(array: &AssocArray) -> Result<String, CliError> {
    for (r, c, v) in array.cells() {
        if !field_ok(r) || !field_ok(c) || !field_ok(v) {
            return Err(CliError::usage(
                "keys and values must not contain tabs or newlines",
            ));
        }
    }
    let mut out = String::new();
    for col in array.col_keys() {
        out.push('\t');
        out.push_str(col);
    }
    out.push('\n');
    for row in array.row_keys() {
        out.push_str(row);
        for col in array.col_keys() {
            out.push('\t');
            if let Some(v) = array.get(row, col) {
                out.push_str(v);
            }
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn assoc_from_tsv(text: &str) -> Result<AssocArray, CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::data("empty TSV: missing header row"))?;
    let mut header_fields = header.split('\t');
    if header_fields.next() != Some("") {
        return Err(CliError::data("TSV header must start with an empty field"));
    }
    let cols: Vec<&str> = header_fields.collect();

    let (mut rows, mut col_names, mut vals) = (Vec::new(), Vec::new(), Vec::new());
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let row = fields.next().expect("split yields at least one field");
        let mut count = 0usize;
        for (col_idx, value) in fields.enumerate() {
            count += 1;
            if col_idx >= cols.len() {
                return Err(CliError::data(format!(
                    "TSV row {} has more fields than the header",
                    lineno + 2
                )));
            }
            if !value.is_empty() {
                rows.push(row.to_string());
                col_names.push(cols[col_idx].to_string());
                vals.push(value.to_string());
            }
        }
        let _ = count;
    }
    AssocArray::from_triples(rows, col_names, vals).map_err(CliError::from)
}
