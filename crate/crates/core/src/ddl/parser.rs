//! `CREATE TABLE` statement parsing.

use super::lexer::{canonical_join, lex, Tok, TokKind};
use super::types::{ci_eq, Column, ForeignKey, Schema, Table};
use super::DdlError;

/// Modifier keywords allowed between `CREATE` and `TABLE`.
const CREATE_MODIFIERS: &[&str] = &["TEMP", "TEMPORARY", "OR", "REPLACE", "GLOBAL", "LOCAL", "UNLOGGED"];

/// Keywords that terminate a type or default-expression capture and start a
/// column constraint.
const COLUMN_CONSTRAINT_KEYWORDS: &[&str] = &[
    "PRIMARY", "NOT", "NULL", "DEFAULT", "REFERENCES", "UNIQUE", "CHECK", "CONSTRAINT", "COLLATE",
];

/// Parses all `CREATE TABLE` statements in `text` into a [`Schema`].
///
/// Anything else (comments, `CREATE INDEX`, `INSERT`, ...) is ignored.
/// Structural problems — unbalanced parentheses, truncated statements,
/// duplicate table names — surface as [`DdlError::Parse`] carrying the byte
/// offset and the offending statement.
pub fn parse_ddl(text: &str, source_name: &str) -> Result<Schema, DdlError> {
    let toks = lex(text)?;
    let mut tables: Vec<Table> = Vec::new();

    for stmt in split_statements(text, &toks)? {
        if !is_create_table(stmt.toks) {
            continue;
        }
        let table = parse_create_table(&mut Cursor::new(text, stmt.toks))?;
        if let Some(existing) = tables.iter().find(|t| ci_eq(&t.name, &table.name)) {
            return Err(parse_err(
                stmt.toks[0].offset,
                stmt.src(text),
                format!("duplicate table name \"{}\" (already defined as \"{}\")", table.name, existing.name),
            ));
        }
        tables.push(table);
    }

    Ok(Schema { source_name: source_name.to_string(), tables })
}

struct Statement<'a> {
    toks: &'a [Tok],
    start: usize,
    end: usize,
}

impl Statement<'_> {
    fn src<'s>(&self, text: &'s str) -> &'s str {
        &text[self.start..self.end]
    }
}

fn parse_err(offset: usize, stmt_src: &str, message: impl Into<String>) -> DdlError {
    DdlError::Parse {
        offset,
        statement: stmt_src.trim().chars().take(48).collect(),
        message: message.into(),
    }
}

/// Splits the token stream on top-level semicolons, verifying that
/// parentheses balance within each statement.
fn split_statements<'a>(text: &str, toks: &'a [Tok]) -> Result<Vec<Statement<'a>>, DdlError> {
    let mut statements = Vec::new();
    let mut depth = 0usize;
    let mut open_offsets: Vec<usize> = Vec::new();
    let mut stmt_begin = 0usize;

    for (i, tok) in toks.iter().enumerate() {
        match tok.kind {
            TokKind::LParen => {
                depth += 1;
                open_offsets.push(tok.offset);
            }
            TokKind::RParen => {
                if depth == 0 {
                    let start = toks[stmt_begin].offset;
                    return Err(parse_err(tok.offset, &text[start..], "unbalanced parentheses: unexpected ')'"));
                }
                depth -= 1;
                open_offsets.pop();
            }
            TokKind::Semi if depth == 0 => {
                if i > stmt_begin {
                    statements.push(Statement {
                        toks: &toks[stmt_begin..i],
                        start: toks[stmt_begin].offset,
                        end: tok.offset,
                    });
                }
                stmt_begin = i + 1;
            }
            _ => {}
        }
    }

    if depth > 0 {
        let open = open_offsets.pop().unwrap_or(0);
        let start = toks[stmt_begin].offset;
        return Err(parse_err(open, &text[start..], "unbalanced parentheses: '(' is never closed"));
    }
    if stmt_begin < toks.len() {
        statements.push(Statement {
            toks: &toks[stmt_begin..],
            start: toks[stmt_begin].offset,
            end: text.len(),
        });
    }
    Ok(statements)
}

fn is_create_table(toks: &[Tok]) -> bool {
    let mut iter = toks.iter();
    match iter.next() {
        Some(t) if t.is_kw("CREATE") => {}
        _ => return false,
    }
    for tok in iter {
        if tok.is_kw("TABLE") {
            return true;
        }
        if !(tok.kind == TokKind::Ident && CREATE_MODIFIERS.iter().any(|m| tok.is_kw(m))) {
            return false;
        }
    }
    false
}

struct Cursor<'a> {
    text: &'a str,
    toks: &'a [Tok],
    pos: usize,
    stmt_start: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, toks: &'a [Tok]) -> Self {
        let stmt_start = toks.first().map_or(0, |t| t.offset);
        Cursor { text, toks, pos: 0, stmt_start }
    }

    fn stmt_src(&self) -> &str {
        &self.text[self.stmt_start..]
    }

    fn err_here(&self, message: impl Into<String>) -> DdlError {
        let offset = self
            .toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(self.stmt_start, |t| t.offset);
        parse_err(offset, self.stmt_src(), message)
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Tok> {
        let tok = self.toks.get(self.pos);
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.peek().is_some_and(|t| t.is_kw(kw)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), DdlError> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.err_here(format!("expected keyword {kw}")))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<&'a Tok, DdlError> {
        match self.peek() {
            Some(t) if t.is_ident() => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.err_here(format!("expected {what}"))),
        }
    }

    fn expect_kind(&mut self, kind: TokKind, what: &str) -> Result<&'a Tok, DdlError> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.err_here(format!("expected {what}"))),
        }
    }
}

fn parse_create_table(cur: &mut Cursor) -> Result<Table, DdlError> {
    cur.expect_kw("CREATE")?;
    while cur.peek().is_some_and(|t| CREATE_MODIFIERS.iter().any(|m| t.is_kw(m))) {
        cur.pos += 1;
    }
    cur.expect_kw("TABLE")?;
    if cur.eat_kw("IF") {
        cur.expect_kw("NOT")?;
        cur.expect_kw("EXISTS")?;
    }

    // Qualified names keep the last segment as the table name.
    let mut name = cur.expect_ident("table name")?.value.clone();
    while cur.peek().is_some_and(|t| t.kind == TokKind::Dot) {
        cur.pos += 1;
        name = cur.expect_ident("table name after '.'")?.value.clone();
    }

    cur.expect_kind(TokKind::LParen, "'(' to open the table body")?;
    let body = take_group_body(cur)?;

    let mut table = Table {
        name,
        columns: Vec::new(),
        primary_key: Vec::new(),
        foreign_keys: Vec::new(),
        opaque_constraints: Vec::new(),
    };
    let mut pk_seen = false;

    for element in split_on_top_level_commas(body) {
        if element.is_empty() {
            return Err(cur.err_here("empty element in table body"));
        }
        parse_element(cur, element, &mut table, &mut pk_seen)?;
    }

    validate_table(cur, &mut table)?;
    // Remaining statement tokens are table options (WITHOUT ROWID, engine
    // clauses, ...) and are ignored.
    Ok(table)
}

/// Consumes tokens up to and including the ')' matching an already-consumed
/// '(' and returns the inner slice.
fn take_group_body<'a>(cur: &mut Cursor<'a>) -> Result<&'a [Tok], DdlError> {
    let start = cur.pos;
    let mut depth = 0usize;
    while let Some(tok) = cur.next() {
        match tok.kind {
            TokKind::LParen => depth += 1,
            TokKind::RParen => {
                if depth == 0 {
                    return Ok(&cur.toks[start..cur.pos - 1]);
                }
                depth -= 1;
            }
            _ => {}
        }
    }
    Err(cur.err_here("truncated statement: table body is never closed"))
}

fn split_on_top_level_commas(toks: &[Tok]) -> Vec<&[Tok]> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut begin = 0usize;
    for (i, tok) in toks.iter().enumerate() {
        match tok.kind {
            TokKind::LParen => depth += 1,
            TokKind::RParen => depth = depth.saturating_sub(1),
            TokKind::Comma if depth == 0 => {
                out.push(&toks[begin..i]);
                begin = i + 1;
            }
            _ => {}
        }
    }
    out.push(&toks[begin..]);
    out
}

fn parse_element(
    cur: &Cursor,
    element: &[Tok],
    table: &mut Table,
    pk_seen: &mut bool,
) -> Result<(), DdlError> {
    let mut el = Cursor { text: cur.text, toks: element, pos: 0, stmt_start: cur.stmt_start };
    let first = &element[0];

    if first.is_kw("CONSTRAINT") {
        // Named constraint: structured for PK/FK, opaque otherwise. The
        // constraint name is dropped from canonical form.
        let mut probe = Cursor { text: cur.text, toks: element, pos: 1, stmt_start: cur.stmt_start };
        probe.expect_ident("constraint name")?;
        match probe.peek() {
            Some(t) if t.is_kw("PRIMARY") => return parse_table_pk(&mut probe, table, pk_seen),
            Some(t) if t.is_kw("FOREIGN") => return parse_table_fk(&mut probe, table),
            _ => {
                table.opaque_constraints.push(canonical_join(element));
                return Ok(());
            }
        }
    }
    if first.is_kw("PRIMARY") {
        return parse_table_pk(&mut el, table, pk_seen);
    }
    if first.is_kw("FOREIGN") {
        return parse_table_fk(&mut el, table);
    }
    if first.kind == TokKind::Ident
        && (first.is_kw("UNIQUE") || first.is_kw("CHECK") || first.is_kw("COLLATE"))
        || !first.is_ident()
    {
        table.opaque_constraints.push(canonical_join(element));
        return Ok(());
    }

    parse_column_element(&mut el, table)
}

fn parse_table_pk(el: &mut Cursor, table: &mut Table, pk_seen: &mut bool) -> Result<(), DdlError> {
    el.expect_kw("PRIMARY")?;
    el.expect_kw("KEY")?;
    if *pk_seen {
        return Err(el.err_here("multiple PRIMARY KEY definitions"));
    }
    *pk_seen = true;
    table.primary_key = parse_name_list(el)?;
    if el.peek().is_some() {
        return Err(el.err_here("unexpected tokens after PRIMARY KEY column list"));
    }
    Ok(())
}

fn parse_table_fk(el: &mut Cursor, table: &mut Table) -> Result<(), DdlError> {
    el.expect_kw("FOREIGN")?;
    el.expect_kw("KEY")?;
    let local_columns = parse_name_list(el)?;
    el.expect_kw("REFERENCES")?;
    let fk = parse_references(el, local_columns)?;
    if el.peek().is_some() {
        return Err(el.err_here("unexpected tokens after FOREIGN KEY clause"));
    }
    table.foreign_keys.push(fk);
    Ok(())
}

/// Parses `tbl [(col, ...)]` plus referential-action tail after a
/// `REFERENCES` keyword. Actions (`ON DELETE ...`, `MATCH ...`,
/// deferrability) are accepted and normalized away.
fn parse_references(el: &mut Cursor, local_columns: Vec<String>) -> Result<ForeignKey, DdlError> {
    let mut referenced_table = el.expect_ident("referenced table name")?.value.clone();
    while el.peek().is_some_and(|t| t.kind == TokKind::Dot) {
        el.pos += 1;
        referenced_table = el.expect_ident("referenced table name after '.'")?.value.clone();
    }
    let referenced_columns = if el.peek().is_some_and(|t| t.kind == TokKind::LParen) {
        parse_name_list(el)?
    } else {
        Vec::new()
    };
    if !referenced_columns.is_empty() && referenced_columns.len() != local_columns.len() {
        return Err(el.err_here(format!(
            "foreign key column count mismatch: {} local vs {} referenced",
            local_columns.len(),
            referenced_columns.len()
        )));
    }
    consume_fk_tail(el)?;
    Ok(ForeignKey { local_columns, referenced_table, referenced_columns })
}

fn consume_fk_tail(el: &mut Cursor) -> Result<(), DdlError> {
    loop {
        if el.eat_kw("ON") {
            if !(el.eat_kw("DELETE") || el.eat_kw("UPDATE")) {
                return Err(el.err_here("expected DELETE or UPDATE after ON"));
            }
            if el.eat_kw("SET") {
                if !(el.eat_kw("NULL") || el.eat_kw("DEFAULT")) {
                    return Err(el.err_here("expected NULL or DEFAULT after SET"));
                }
            } else if el.eat_kw("NO") {
                el.expect_kw("ACTION")?;
            } else if !(el.eat_kw("CASCADE") || el.eat_kw("RESTRICT")) {
                return Err(el.err_here("unsupported referential action"));
            }
        } else if el.eat_kw("MATCH") {
            el.expect_ident("match type")?;
        } else if el.eat_kw("NOT") {
            el.expect_kw("DEFERRABLE")?;
        } else if el.eat_kw("DEFERRABLE") {
        } else if el.eat_kw("INITIALLY") {
            el.expect_ident("constraint check time")?;
        } else {
            return Ok(());
        }
    }
}

fn parse_name_list(el: &mut Cursor) -> Result<Vec<String>, DdlError> {
    el.expect_kind(TokKind::LParen, "'(' to open a column list")?;
    let mut names = Vec::new();
    loop {
        names.push(el.expect_ident("column name")?.value.clone());
        match el.next() {
            Some(t) if t.kind == TokKind::Comma => continue,
            Some(t) if t.kind == TokKind::RParen => break,
            _ => return Err(el.err_here("expected ',' or ')' in column list")),
        }
    }
    Ok(names)
}

fn parse_column_element(el: &mut Cursor, table: &mut Table) -> Result<(), DdlError> {
    let name = el.expect_ident("column name")?.value.clone();
    let type_toks = capture_until_constraint(el);
    let mut column = Column {
        name: name.clone(),
        declared_type: canonical_join(type_toks),
        nullable: true,
        default_expr: None,
    };
    let quoted_name = Tok {
        kind: TokKind::QuotedIdent,
        text: format!("\"{}\"", name.replace('"', "\"\"")),
        value: name.clone(),
        offset: 0,
    };

    while let Some(tok) = el.peek() {
        if tok.is_kw("PRIMARY") {
            el.pos += 1;
            el.expect_kw("KEY")?;
            if !table.primary_key.is_empty() {
                return Err(el.err_here("multiple PRIMARY KEY definitions"));
            }
            table.primary_key = vec![name.clone()];
        } else if tok.is_kw("NOT") {
            el.pos += 1;
            el.expect_kw("NULL")?;
            column.nullable = false;
        } else if tok.is_kw("NULL") {
            el.pos += 1;
            column.nullable = true;
        } else if tok.is_kw("DEFAULT") {
            el.pos += 1;
            let expr = capture_until_constraint(el);
            if expr.is_empty() {
                return Err(el.err_here("DEFAULT without an expression"));
            }
            column.default_expr = Some(canonical_join(expr));
        } else if tok.is_kw("REFERENCES") {
            el.pos += 1;
            let fk = parse_references(el, vec![name.clone()])?;
            table.foreign_keys.push(fk);
        } else if tok.is_kw("UNIQUE") {
            el.pos += 1;
            table.opaque_constraints.push(unique_opaque(&quoted_name));
        } else if tok.is_kw("CONSTRAINT") {
            // Named column constraint: keep the rest verbatim.
            let rest = &el.toks[el.pos..];
            el.pos = el.toks.len();
            table.opaque_constraints.push(suffixed_opaque(rest, &quoted_name));
        } else {
            // CHECK, COLLATE, GENERATED, and anything else we do not model:
            // the remainder of the element is preserved, tagged with the
            // column it came from.
            let rest = &el.toks[el.pos..];
            el.pos = el.toks.len();
            table.opaque_constraints.push(suffixed_opaque(rest, &quoted_name));
        }
    }

    table.columns.push(column);
    Ok(())
}

fn unique_opaque(quoted_name: &Tok) -> String {
    let toks = [
        ident_tok("UNIQUE"),
        punct_tok(TokKind::LParen, "("),
        quoted_name.clone(),
        punct_tok(TokKind::RParen, ")"),
    ];
    canonical_join(&toks)
}

fn suffixed_opaque(rest: &[Tok], quoted_name: &Tok) -> String {
    let mut toks: Vec<Tok> = rest.to_vec();
    toks.push(punct_tok(TokKind::LParen, "("));
    toks.push(quoted_name.clone());
    toks.push(punct_tok(TokKind::RParen, ")"));
    canonical_join(&toks)
}

fn ident_tok(text: &str) -> Tok {
    Tok { kind: TokKind::Ident, text: text.to_string(), value: text.to_string(), offset: 0 }
}

fn punct_tok(kind: TokKind, text: &str) -> Tok {
    Tok { kind, text: text.to_string(), value: text.to_string(), offset: 0 }
}

/// Collects tokens (paren-balanced) until a top-level column-constraint
/// keyword or the end of the element.
fn capture_until_constraint<'a>(el: &mut Cursor<'a>) -> &'a [Tok] {
    let start = el.pos;
    let mut depth = 0usize;
    while let Some(tok) = el.peek() {
        match tok.kind {
            TokKind::LParen => depth += 1,
            TokKind::RParen => depth = depth.saturating_sub(1),
            TokKind::Ident
                if depth == 0 && COLUMN_CONSTRAINT_KEYWORDS.iter().any(|kw| tok.is_kw(kw)) =>
            {
                break;
            }
            _ => {}
        }
        el.pos += 1;
    }
    &el.toks[start..el.pos]
}

fn validate_table(cur: &Cursor, table: &mut Table) -> Result<(), DdlError> {
    for (i, a) in table.columns.iter().enumerate() {
        if table.columns[i + 1..].iter().any(|b| ci_eq(&a.name, &b.name)) {
            return Err(cur.err_here(format!(
                "duplicate column name \"{}\" in table \"{}\"",
                a.name, table.name
            )));
        }
    }
    for pk in &table.primary_key {
        if table.column(pk).is_none() {
            return Err(cur.err_here(format!(
                "PRIMARY KEY names unknown column \"{pk}\" in table \"{}\"",
                table.name
            )));
        }
    }
    for fk in &table.foreign_keys {
        for local in &fk.local_columns {
            if table.column(local).is_none() {
                return Err(cur.err_here(format!(
                    "FOREIGN KEY names unknown column \"{local}\" in table \"{}\"",
                    table.name
                )));
            }
        }
    }
    // Primary-key membership implies NOT NULL.
    let pk = table.primary_key.clone();
    for column in &mut table.columns {
        if pk.iter().any(|p| ci_eq(p, &column.name)) {
            column.nullable = false;
        }
    }
    Ok(())
}
