/** Viridis-style colormap from anchor points with linear interpolation. */

import type { Rgb } from './raster.js'

const ANCHORS: Array<[number, Rgb]> = [
  [0.0, [68, 1, 84]],
  [0.125, [71, 44, 122]],
  [0.25, [59, 81, 139]],
  [0.375, [44, 113, 142]],
  [0.5, [33, 144, 141]],
  [0.625, [39, 173, 129]],
  [0.75, [92, 200, 99]],
  [0.875, [170, 220, 50]],
  [1.0, [253, 231, 37]],
]

export function colormap(value: number): Rgb {
  const t = Math.min(1, Math.max(0, value))
  for (let i = 1; i < ANCHORS.length; i++) {
    const [t1, c1] = ANCHORS[i]
    if (t <= t1) {
      const [t0, c0] = ANCHORS[i - 1]
      const f = t1 === t0 ? 0 : (t - t0) / (t1 - t0)
      return [
        Math.round(c0[0] + f * (c1[0] - c0[0])),
        Math.round(c0[1] + f * (c1[1] - c0[1])),
        Math.round(c0[2] + f * (c1[2] - c0[2])),
      ]
    }
  }
  return ANCHORS[ANCHORS.length - 1][1]
}

/** Distinguishable line colors for the scheme curves. */
export const SERIES_COLORS: Rgb[] = [
  [31, 119, 180],
  [255, 127, 14],
  [44, 160, 44],
  [214, 39, 40],
  [148, 103, 189],
  [140, 86, 75],
  [227, 119, 194],
]
