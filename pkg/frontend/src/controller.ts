/** Session controller: commits view edits and keeps the mirror fresh.
 *
 * At most one mutation is in flight; a 409 (stale revision) triggers a
 * refetch and reports the conflict so the caller can replay the edit.
 */

import { ApiClient, ApiError } from "./api";
import type { AxesRequest } from "./types";
import { NEIGHBOR_K_CHOICES } from "./types";
import { ViewState } from "./view-state";

export type CommitOutcome = "applied" | "stale-retry";

export class SessionController {
  private mutationInFlight = false;

  constructor(
    readonly api: ApiClient,
    readonly view: ViewState,
  ) {}

  async refresh(): Promise<void> {
    const geometry = await this.api.geometry();
    this.view.adopt(geometry);
  }

  private async commit(send: () => Promise<{ revision: number }>): Promise<CommitOutcome> {
    if (this.mutationInFlight) throw new Error("a mutation is already in flight");
    this.mutationInFlight = true;
    try {
      await send();
      await this.refresh();
      return "applied";
    } catch (error) {
      if (error instanceof ApiError && error.isStaleRevision) {
        await this.refresh(); // catch up; the caller may replay the edit
        return "stale-retry";
      }
      throw error;
    } finally {
      this.mutationInFlight = false;
    }
  }

  /** Axis edits carry the last seen revision (optimistic concurrency). */
  commitAxes(request: AxesRequest): Promise<CommitOutcome> {
    return this.commit(() =>
      this.api.patchAxes({ revision: this.view.revision, ...request }),
    );
  }

  toggleClosedContour(): Promise<CommitOutcome> {
    const closed = this.view.geometry?.layout.closed ?? false;
    return this.commit(() =>
      this.api.patchAxes({ revision: this.view.revision, closed: !closed }),
    );
  }

  straightenSelected(method: "rotation" | "radius" = "rotation"): Promise<CommitOutcome> {
    const [caseId] = this.view.selectedCaseIds;
    if (caseId === undefined) throw new Error("no case selected");
    return this.commit(() => this.api.straighten(caseId, method, this.view.revision));
  }

  async insertMeanCase(label: string): Promise<number> {
    let caseId = -1;
    await this.commit(async () => {
      const response = await this.api.meanCase(label);
      caseId = response.case.id;
      return response;
    });
    return caseId;
  }

  /** Fetch the k nearest neighbors of a case and overlay them. */
  async neighborOverlay(caseId: number, k: number): Promise<number[]> {
    if (!(NEIGHBOR_K_CHOICES as readonly number[]).includes(k)) {
      throw new Error(`k must be one of ${NEIGHBOR_K_CHOICES.join(", ")}`);
    }
    const response = await this.api.classifyKnn(k, caseId);
    this.view.setNeighborOverlay(response.prediction ?? "", response.neighbors ?? []);
    await this.refresh();
    return response.neighbors ?? [];
  }

  /** Swap between the full and the occlusion-reduced geometry. */
  async toggleOcclusionRemoval(bins = 100, tau?: number): Promise<void> {
    if (this.view.orActive) {
      await this.commit(() => this.api.orClear());
      this.view.orMetrics = null;
      this.view.orActive = false;
      return;
    }
    await this.commit(async () => {
      const response = await this.api.orReduce(bins, tau);
      this.view.orMetrics = response.metrics;
      return response;
    });
    this.view.orActive = true;
  }

  async exportSvg(): Promise<string> {
    return await this.api.svg();
  }
}
