/**
 * View state for the evaluation and what-if panels.
 *
 * The store keeps service payloads verbatim: the ranking rows, weight
 * vectors and consistency reports rendered on screen are exactly the
 * arrays the service returned for the current revision. A failed what-if
 * keeps the last good ranking on screen and records the error for a
 * toast; reset restores the evaluated (unperturbed) ranking.
 */

import {
  ApiClient,
  ApiError,
  CompositeRow,
  ConsistencyReport,
  EvaluationResponse,
  WhatIfResponse,
} from "./api.js";

export interface WhatIfSlider {
  node: string;
  weight: number;
}

export class SessionViewStore {
  /** Ranking currently displayed (evaluated or perturbed). */
  ranking: CompositeRow[] | null = null;
  /** The evaluated, unperturbed ranking (reset target). */
  baseRanking: CompositeRow[] | null = null;
  weights: Record<string, number[]> = {};
  reports: Record<string, ConsistencyReport> = {};
  allPassed: boolean | null = null;
  revision: number | null = null;
  activeSlider: WhatIfSlider | null = null;
  lastError: ApiError | null = null;

  constructor(
    private readonly api: ApiClient,
    readonly sessionId: string,
  ) {}

  get hasEvaluation(): boolean {
    return this.baseRanking !== null;
  }

  async evaluate(method = "geometric_mean"): Promise<EvaluationResponse> {
    const payload = await this.api.evaluate(this.sessionId, method);
    this.applyEvaluation(payload);
    return payload;
  }

  applyEvaluation(payload: EvaluationResponse): void {
    this.baseRanking = payload.result.composite;
    this.ranking = payload.result.composite;
    this.weights = payload.result.weights;
    this.reports = payload.result.reports;
    this.allPassed = payload.result.all_passed;
    this.revision = payload.revision;
    this.activeSlider = null;
    this.lastError = null;
  }

  /** Drag handler: ask the service for the perturbed ranking. */
  async whatIf(node: string, weight: number): Promise<WhatIfResponse | null> {
    try {
      const payload = await this.api.whatIf(this.sessionId, node, weight);
      this.applyWhatIf(payload);
      return payload;
    } catch (err) {
      if (err instanceof ApiError) {
        // keep the last good ranking on screen; surface a toast
        this.lastError = err;
        return null;
      }
      throw err;
    }
  }

  applyWhatIf(payload: WhatIfResponse): void {
    this.ranking = payload.ranking;
    this.activeSlider = { node: payload.node, weight: payload.weight };
    this.lastError = null;
  }

  /** Return to the evaluated ranking. */
  reset(): void {
    this.ranking = this.baseRanking;
    this.activeSlider = null;
    this.lastError = null;
  }
}
