import { describe, expect, it } from "vitest";
import { marchingSquares } from "../src/contour.js";

describe("marchingSquares", () => {
  it("finds no contour in a uniform field", () => {
    const grid = [
      [1, 1, 1],
      [1, 1, 1],
    ];
    expect(marchingSquares(grid, 0)).toHaveLength(0);
  });

  it("finds a vertical boundary where the sign flips", () => {
    const grid = [
      [-1, 1],
      [-1, 1],
    ];
    const segments = marchingSquares(grid, 0);
    expect(segments).toHaveLength(1);
    const [[a, b]] = segments;
    // crossing halfway along both horizontal edges
    expect(a.c).toBeCloseTo(0.5, 12);
    expect(b.c).toBeCloseTo(0.5, 12);
    expect(Math.abs(a.r - b.r)).toBeCloseTo(1, 12);
  });

  it("interpolates the crossing position linearly", () => {
    const grid = [
      [-1, 3],
      [-1, 3],
    ];
    const [[a]] = marchingSquares(grid, 0);
    expect(a.c).toBeCloseTo(0.25, 12);
  });

  it("walks around a closed island", () => {
    const grid = [
      [-1, -1, -1],
      [-1, 5, -1],
      [-1, -1, -1],
    ];
    const segments = marchingSquares(grid, 0);
    expect(segments.length).toBe(4); // one corner cut per surrounding cell
  });

  it("skips cells with non-finite values", () => {
    const grid = [
      [-1, NaN],
      [-1, 1],
    ];
    expect(marchingSquares(grid, 0)).toHaveLength(0);
  });
});
