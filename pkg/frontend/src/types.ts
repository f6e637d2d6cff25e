/** Wire types mirroring the server's JSON documents. */

export interface AxisDto {
  attr: number;
  position: number;
  radius: number;
  rotation: number;
  direction: 1 | -1;
  span: number;
  arc_valued: boolean;
}

export interface LayoutDto {
  mode: "concentric" | "planar" | "stacked";
  center: [number, number];
  closed: boolean;
  axis_centers: [number, number][] | null;
  z_step: number;
  radius_factor: number;
}

export interface ClassDto {
  label: string;
  color: string;
}

/** One drawing primitive; the painter consumes these verbatim. */
export interface Primitive {
  kind: "rect" | "circle" | "line" | "polyline" | "polygon" | "arc";
  role: string;
  ref?: number | string;
  label?: string;
  stroke?: string | null;
  stroke_width?: number;
  fill?: string | null;
  opacity?: number;
  points?: [number, number][];
  cx?: number;
  cy?: number;
  r?: number;
  x1?: number;
  y1?: number;
  x2?: number;
  y2?: number;
  theta1?: number;
  theta2?: number;
}

export interface Drawlist {
  viewport: [number, number, number, number];
  primitives: Primitive[];
}

export interface GeometryResponse {
  revision: number;
  axes: AxisDto[];
  layout: LayoutDto;
  classes: ClassDto[];
  metrics: { segments_before?: number; segments_after?: number };
  drawlist: Drawlist;
}

export interface AxisPatch {
  position?: number;
  attr?: number;
  rotation?: number;
  radius?: number;
  span?: number;
  direction?: 1 | -1;
}

export interface AxesRequest {
  revision?: number;
  patches?: AxisPatch[];
  order?: number[];
  order_strategy?: string;
  span_coefficients?: number[];
  closed?: boolean;
  layout_mode?: string;
  spacing?: number;
}

export interface OrMetrics {
  segments_before: number;
  segments_after: number;
  suppressed_case_ids: number[];
  selected: { axis_position: number; bin: number; label: string; count: number }[];
}

export interface KnnResponse {
  revision: number;
  model_id: string;
  prediction?: string;
  neighbors?: number[];
  cv: { mean: number; std: number; fold_accuracies: number[] };
}

export const NEIGHBOR_K_CHOICES = [1, 3, 5, 7, 21] as const;
