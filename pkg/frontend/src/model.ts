// View model for one live session. Every fact shown by the UI comes out
// of this class, and everything here comes from a service snapshot or a
// trace fetch — the view never invents state.

import { ApiClient, ApiError, InstanceView, Snapshot } from "./protocol.js";

export interface EventButton {
  instance: string;
  event: string;
  description: string;
}

export class SessionViewModel {
  snapshot: Snapshot | null = null;
  connected = false;
  lastError = "";
  traceLog: string[] = [];
  busy = false;
  private traceCursor = 0;

  constructor(
    private readonly client: ApiClient,
    readonly sessionId: string,
  ) {}

  applySnapshot(snapshot: Snapshot): void {
    this.snapshot = snapshot;
  }

  markConnected(): void {
    this.connected = true;
  }

  markDisconnected(): void {
    this.connected = false;
  }

  instances(): InstanceView[] {
    return this.snapshot ? this.snapshot.instances : [];
  }

  currentStateOf(instance: string): string | null {
    const view = this.instances().find((i) => i.id === instance);
    return view ? view.state : null;
  }

  // The button set is exactly the snapshot's possible-events, per instance.
  eventButtons(): EventButton[] {
    const buttons: EventButton[] = [];
    for (const inst of this.instances()) {
      for (const offer of inst.possible_events) {
        buttons.push({ instance: inst.id, event: offer.id, description: offer.description });
      }
    }
    return buttons;
  }

  isOffered(instance: string, event: string): boolean {
    return this.eventButtons().some((b) => b.instance === instance && b.event === event);
  }

  async refreshTrace(): Promise<string[]> {
    const result = await this.client.trace(this.sessionId, this.traceCursor);
    this.traceCursor = result.next;
    this.traceLog.push(...result.entries);
    return result.entries;
  }

  // Disabled events never reach the service: returns false without a request.
  async sendEvent(instance: string, event: string): Promise<boolean> {
    if (this.busy || !this.isOffered(instance, event)) {
      return false;
    }
    this.busy = true;
    try {
      const result = await this.client.injectEvent(this.sessionId, instance, event);
      this.applySnapshot(result.snapshot);
      this.lastError = "";
      await this.refreshTrace();
      return true;
    } catch (err) {
      this.lastError = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
      return false;
    } finally {
      this.busy = false;
    }
  }
}
