/**
 * Built-in demo graph: four 8-cliques arranged on a 2 x 2 lattice, with
 * three parallel bridge edges between adjacent blocks.  Deterministic, so
 * "pick the sample" always maps to the same content-addressed graph id.
 */
export function sampleGraphText(): string {
  const blockSize = 8;
  const rows = 2;
  const cols = 2;
  const lines: string[] = [];
  const base = (r: number, c: number) => (r * cols + c) * blockSize;
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      const b = base(r, c);
      for (let i = 0; i < blockSize; i++) {
        for (let j = i + 1; j < blockSize; j++) {
          lines.push(`${b + i} ${b + j}`);
        }
      }
      for (let bridge = 0; bridge < 3; bridge++) {
        if (c + 1 < cols) lines.push(`${b + bridge} ${base(r, c + 1) + bridge}`);
        if (r + 1 < rows) lines.push(`${b + bridge} ${base(r + 1, c) + bridge}`);
      }
    }
  }
  return lines.join("\n") + "\n";
}
