/**
 * Marching-squares contour extraction on a rectangular grid.
 *
 * Coordinates are fractional grid indices: a segment endpoint (r, c) lies at
 * row r, column c of the value grid, with linear interpolation along cell
 * edges.  Cells touching non-finite values are skipped.
 */

export interface Point {
  r: number;
  c: number;
}

export type Segment = [Point, Point];

function interpolate(a: number, b: number, level: number): number {
  if (a === b) {
    return 0.5;
  }
  return (level - a) / (b - a);
}

export function marchingSquares(grid: number[][], level: number): Segment[] {
  const segments: Segment[] = [];
  const nRows = grid.length;
  const nCols = nRows > 0 ? grid[0].length : 0;
  for (let r = 0; r < nRows - 1; r++) {
    for (let c = 0; c < nCols - 1; c++) {
      const tl = grid[r][c];
      const tr = grid[r][c + 1];
      const br = grid[r + 1][c + 1];
      const bl = grid[r + 1][c];
      if (![tl, tr, br, bl].every(Number.isFinite)) {
        continue;
      }
      let code = 0;
      if (tl > level) code |= 8;
      if (tr > level) code |= 4;
      if (br > level) code |= 2;
      if (bl > level) code |= 1;
      if (code === 0 || code === 15) {
        continue;
      }
      // edge midpoints with interpolation: top, right, bottom, left
      const top: Point = { r, c: c + interpolate(tl, tr, level) };
      const right: Point = { r: r + interpolate(tr, br, level), c: c + 1 };
      const bottom: Point = { r: r + 1, c: c + interpolate(bl, br, level) };
      const left: Point = { r: r + interpolate(tl, bl, level), c };
      const add = (a: Point, b: Point) => segments.push([a, b]);
      switch (code) {
        case 1:
        case 14:
          add(left, bottom);
          break;
        case 2:
        case 13:
          add(bottom, right);
          break;
        case 3:
        case 12:
          add(left, right);
          break;
        case 4:
        case 11:
          add(top, right);
          break;
        case 6:
        case 9:
          add(top, bottom);
          break;
        case 7:
        case 8:
          add(left, top);
          break;
        case 5: // saddle: resolve by the cell-center average
        case 10: {
          const center = (tl + tr + br + bl) / 4;
          const centerHigh = center > level;
          if ((code === 5) === centerHigh) {
            add(left, top);
            add(bottom, right);
          } else {
            add(left, bottom);
            add(top, right);
          }
          break;
        }
      }
    }
  }
  return segments;
}
