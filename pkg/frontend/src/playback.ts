/**
 * Muted playback clock: a monotone time source with play/pause/seek, which is
 * all the marker synchronization contract needs. No audio is produced.
 */
export class PlaybackClock {
  private startedAt = 0; // clock reading when playback last started
  private base = 0;      // piece position at that moment
  private running = false;

  constructor(private now: () => number = () => performance.now() / 1000) {}

  get playing(): boolean {
    return this.running;
  }

  position(): number {
    return this.running ? this.base + (this.now() - this.startedAt) : this.base;
  }

  play(): void {
    if (!this.running) {
      this.startedAt = this.now();
      this.running = true;
    }
  }

  pause(): void {
    if (this.running) {
      this.base = this.position();
      this.running = false;
    }
  }

  seek(tSeconds: number): void {
    this.base = Math.max(0, tSeconds);
    this.startedAt = this.now();
  }
}
