/** Web MIDI input: tracks currently held notes and reports changes.
 * When access is denied or unsupported, the text field remains the way in. */

type HeldListener = (pitches: Set<number>) => void;

export class MidiInput {
  readonly held = new Set<number>();

  constructor(private onChange: HeldListener) {}

  async connect(): Promise<boolean> {
    const nav = navigator as Navigator & {
      requestMIDIAccess?: () => Promise<{
        inputs: Map<string, { addEventListener: (t: string, fn: (e: unknown) => void) => void }>;
      }>;
    };
    if (!nav.requestMIDIAccess) return false;
    try {
      const access = await nav.requestMIDIAccess();
      for (const input of access.inputs.values()) {
        input.addEventListener("midimessage", (event) => {
          this.handleMessage((event as { data: Uint8Array }).data);
        });
      }
      return true;
    } catch {
      return false;
    }
  }

  handleMessage(data: Uint8Array): void {
    if (data.length < 3) return;
    const kind = data[0] & 0xf0;
    const pitch = data[1];
    const velocity = data[2];
    if (kind === 0x90 && velocity > 0) {
      this.held.add(pitch);
    } else if (kind === 0x80 || (kind === 0x90 && velocity === 0)) {
      this.held.delete(pitch);
    } else {
      return;
    }
    this.onChange(this.held);
  }
}
