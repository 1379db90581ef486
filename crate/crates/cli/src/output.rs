//! Human-readable table rendering for reports.

use rolemap_core::mapping::MappingStatus;

/// Renders `table / status / detail` rows with aligned columns.
pub fn status_table<'a>(rows: impl Iterator<Item = (&'a str, &'a MappingStatus)>) -> String {
    let rows: Vec<(&str, String, &str)> = rows
        .map(|(table, status)| (table, status.kind.to_string(), status.detail.as_str()))
        .collect();
    let table_width = rows.iter().map(|(t, ..)| t.len()).max().unwrap_or(5).max("TABLE".len());
    let status_width = rows.iter().map(|(_, s, _)| s.len()).max().unwrap_or(6).max("STATUS".len());

    let mut out = format!("{:<table_width$}  {:<status_width$}  DETAIL\n", "TABLE", "STATUS");
    for (table, status, detail) in rows {
        out.push_str(&format!("{table:<table_width$}  {status:<status_width$}  {detail}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rolemap_core::mapping::StatusKind;

    #[test]
    fn columns_align_to_longest_entry() {
        let a = MappingStatus { kind: StatusKind::Valid, detail: "3 mappings".into() };
        let b = MappingStatus { kind: StatusKind::Missing, detail: "no file".into() };
        let rows = vec![("Users", &a), ("PhoneRequests", &b)];
        let text = status_table(rows.into_iter());
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("TABLE"));
        assert!(lines[1].contains("VALID"));
        assert!(lines[2].starts_with("PhoneRequests  MISSING"));
    }
}
