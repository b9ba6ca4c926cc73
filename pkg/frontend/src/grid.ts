/** Editable concept grid: one row per instance, mirroring the tabular
 * space format. Validation here only guards the import request (ids
 * present, no duplicate pairs, enough concepts); the server remains the
 * authority and returns its own report. */

import { parseCsv, serializeCsv } from "./csv";
import { GRID_COLUMNS, GridRow } from "./types";

export interface CellFlag {
  row: number;
  column: keyof GridRow;
  message: string;
}

export function emptyRow(): GridRow {
  return {
    concept_id: "",
    concept_name: "",
    instance_id: "1",
    part: "",
    organ: "",
    effect: "",
    phenomenon: "",
    input: "",
    state_change: "",
    action: "",
  };
}

export class SpaceGrid {
  rows: GridRow[] = [];

  addRow(row?: Partial<GridRow>): number {
    this.rows.push({ ...emptyRow(), ...row });
    return this.rows.length - 1;
  }

  editCell(index: number, column: keyof GridRow, value: string): void {
    const row = this.rows[index];
    if (!row) throw new Error(`no grid row ${index}`);
    row[column] = value;
  }

  deleteRow(index: number): void {
    this.rows.splice(index, 1);
  }

  /** Load grid contents from CSV text with the exact space-table header. */
  loadCsv(text: string): void {
    const parsed = parseCsv(text);
    const header = parsed[0];
    if (!header) throw new Error("empty file");
    for (let i = 0; i < GRID_COLUMNS.length; i++) {
      if (header[i] !== GRID_COLUMNS[i]) {
        throw new Error(
          `column ${i + 1}: expected '${GRID_COLUMNS[i]}', got '${header[i] ?? "<missing>"}'`,
        );
      }
    }
    if (header.length > GRID_COLUMNS.length) {
      throw new Error(`unexpected extra columns ${header.slice(GRID_COLUMNS.length).join(", ")}`);
    }
    this.rows = parsed.slice(1).map((cells) => {
      const row = emptyRow();
      GRID_COLUMNS.forEach((column, i) => {
        row[column] = cells[i] ?? "";
      });
      return row;
    });
  }

  toCsv(): string {
    const table: string[][] = [GRID_COLUMNS.slice() as string[]];
    for (const row of this.rows) {
      table.push(GRID_COLUMNS.map((column) => row[column]));
    }
    return serializeCsv(table);
  }

  /** Rows in the shape the import endpoint expects. */
  toRequestRows(): GridRow[] {
    return this.rows.map((row) => ({ ...row }));
  }

  conceptCount(): number {
    return new Set(this.rows.map((r) => r.concept_id.trim()).filter((v) => v !== "")).size;
  }

  validate(): CellFlag[] {
    const flags: CellFlag[] = [];
    const seen = new Map<string, number>();
    this.rows.forEach((row, index) => {
      if (!/^\d+$/.test(row.concept_id.trim())) {
        flags.push({ row: index, column: "concept_id", message: "concept_id must be a positive integer" });
      }
      if (!/^\d+$/.test(row.instance_id.trim())) {
        flags.push({ row: index, column: "instance_id", message: "instance_id must be a positive integer" });
      }
      const key = `${row.concept_id.trim()}#${row.instance_id.trim()}`;
      const firstAt = seen.get(key);
      if (firstAt !== undefined) {
        // flag both rows holding the colliding pair
        flags.push({ row: firstAt, column: "instance_id", message: `duplicate pair ${key}` });
        flags.push({ row: index, column: "instance_id", message: `duplicate pair ${key}` });
      } else {
        seen.set(key, index);
      }
    });
    return flags;
  }

  /** The assess button stays disabled until this passes. */
  readyToAssess(): { ok: boolean; reason: string | null } {
    if (this.rows.length === 0) return { ok: false, reason: "no rows entered" };
    if (this.validate().length > 0) return { ok: false, reason: "fix the flagged cells" };
    if (this.conceptCount() < 2) {
      return { ok: false, reason: "an assessment needs at least two concepts" };
    }
    return { ok: true, reason: null };
  }
}
