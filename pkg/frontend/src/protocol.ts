// Client for the simulation service: JSON envelopes over POST /api plus
// a server-sent-event snapshot stream. docs/sim-protocol.md is the schema.

export interface EventOffer {
  id: string;
  description: string;
}

export interface VariableView {
  name: string;
  type: string;
  value: string;
}

export interface InstanceView {
  id: string;
  automaton: string;
  state: string;
  state_name: string;
  final: boolean;
  active: boolean;
  variables: VariableView[];
  possible_events: EventOffer[];
}

export interface Snapshot {
  step: number;
  quiescent: boolean;
  instances: InstanceView[];
  recent_trace: string[];
}

export interface ModelInfo {
  name: string;
  automata?: string[];
  instances?: { id: string; automaton: string }[];
  stubs?: string[];
  error?: string;
}

export interface GraphState {
  id: string;
  name: string;
  kind: "initial" | "ordinary" | "final" | "dummy";
}

export interface GraphTransition {
  source: string;
  destination: string;
  event: string | null;
  guard: string | null;
}

export interface AutomatonGraph {
  id: string;
  states: GraphState[];
  transitions: GraphTransition[];
  initial: string | null;
  finals: string[];
}

export interface ModelGraph {
  automata: AutomatonGraph[];
  instances: { id: string; automaton: string }[];
}

export interface ServiceError {
  code: string;
  message: string;
}

export class ApiError extends Error {
  readonly code: string;

  constructor(error: ServiceError) {
    super(error.message);
    this.code = error.code;
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async call<T>(op: string, session: string | null, payload: object): Promise<T> {
    const response = await fetch(`${this.base}/api`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ op, session, payload }),
    });
    if (!response.ok) {
      throw new ApiError({ code: "http-error", message: `HTTP ${response.status}` });
    }
    const body = (await response.json()) as
      | { ok: true; result: T }
      | { ok: false; error: ServiceError };
    if (!body.ok) {
      throw new ApiError(body.error);
    }
    return body.result;
  }

  listModels(): Promise<{ models: ModelInfo[]; sessions: string[] }> {
    return this.call("list_models", null, {});
  }

  instantiate(model: string, stubs?: string): Promise<{ session: string; snapshot: Snapshot }> {
    return this.call("instantiate", null, stubs ? { model, stubs } : { model });
  }

  injectEvent(session: string, instance: string, event: string): Promise<{ snapshot: Snapshot }> {
    return this.call("inject_event", session, { instance, event });
  }

  snapshot(session: string): Promise<{ snapshot: Snapshot }> {
    return this.call("snapshot", session, {});
  }

  trace(session: string, since: number): Promise<{ entries: string[]; next: number }> {
    return this.call("trace", session, { since });
  }

  modelGraph(session: string): Promise<ModelGraph> {
    return this.call("model", session, {});
  }

  streamUrl(session: string): string {
    return `${this.base}/api/stream?session=${encodeURIComponent(session)}`;
  }
}

// Minimal SSE reader over fetch streaming; EventSource is browser-only and
// this must also run under node for the scripted walkthrough test.
export async function readSnapshotStream(
  url: string,
  onSnapshot: (snapshot: Snapshot) => void,
  onEnd: () => void,
  signal?: AbortSignal,
): Promise<void> {
  let response: Response;
  try {
    response = await fetch(url, { signal });
  } catch {
    onEnd();
    return;
  }
  if (!response.ok || !response.body) {
    onEnd();
    return;
  }
  const reader = response.body.getReader();
  const decoder = new TextDecoder();
  let buffer = "";
  try {
    for (;;) {
      const { done, value } = await reader.read();
      if (done) break;
      buffer += decoder.decode(value, { stream: true });
      for (;;) {
        const split = buffer.indexOf("\n\n");
        if (split < 0) break;
        const block = buffer.slice(0, split);
        buffer = buffer.slice(split + 2);
        const dataLine = block.split("\n").find((line) => line.startsWith("data: "));
        if (dataLine) {
          onSnapshot(JSON.parse(dataLine.slice("data: ".length)) as Snapshot);
        }
      }
    }
  } catch {
    // fall through to onEnd: an aborted or broken stream is a disconnect
  }
  onEnd();
}
