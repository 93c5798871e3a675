/** Operator keypad: digits 1..5, one command per press.
 *
 * Unknown keys are ignored outright; known keys pressed while the link
 * is down are discarded with a toast so the operator knows the fish
 * never heard them.
 */

import { CommandMessage } from "./telemetry.js";
import { ConsoleStore } from "./store.js";

export interface CommandSink {
  state: string;
  send(command: CommandMessage): boolean;
}

export function commandForKey(key: string): CommandMessage | null {
  if (key.length === 1 && key >= "1" && key <= "5") {
    return { type: "key", key: Number(key) as 1 | 2 | 3 | 4 | 5 };
  }
  return null;
}

/** Returns true when a command was actually sent. */
export function handleKeypress(
  key: string,
  session: CommandSink,
  store: ConsoleStore,
): boolean {
  const command = commandForKey(key);
  if (!command) return false;
  if (!session.send(command)) {
    store.addToast(`key ${key} discarded: not connected`);
    return false;
  }
  return true;
}
